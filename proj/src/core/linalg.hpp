#pragma once

#include <vector>

#include "matrix.hpp"

namespace spca {

// Thin SVD, X = U diag(S) V^T with r = min(rows, cols) columns.
// Columns of U and V are orthonormal, S is sorted descending, and in each
// column of V the entry of largest magnitude is positive (first index wins
// ties); U columns are flipped to match.
struct SvdResult {
  Matrix U;
  std::vector<double> S;
  Matrix V;
};

// Thin QR, input = Qf * Rf with Rf upper triangular and nonnegative
// diagonal.
struct QrResult {
  Matrix Qf;
  Matrix Rf;
};

SvdResult svd(const Matrix& x);
QrResult qr(const Matrix& t);

// Moore-Penrose pseudoinverse via SVD; singular values below
// 1e-12 * max(S) are truncated to zero.
Matrix pinv(const Matrix& g);

// Componentwise sign(x_i) * max(|x_i| - delta, 0).
std::vector<double> soft_threshold(const std::vector<double>& x, double delta);

// Smallest delta >= 0 such that the L2-normalized soft-thresholded vector
// has L1 norm <= c (delta = 0 when already feasible). Bisection, 50 steps.
double soft_threshold_delta_for_l1(const std::vector<double>& x, double c);

// Leading right singular vector by power iteration on the Gram matrix,
// with the same sign convention as svd(). Returns a zero vector when X is
// (numerically) zero.
std::vector<double> leading_right_singular_vector(const Matrix& x);

// Numerical rank: number of singular values above tol.
std::size_t numerical_rank(const Matrix& x, double tol = 1e-10);

}  // namespace spca
