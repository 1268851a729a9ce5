#pragma once

#include <vector>

#include "matrix.hpp"

namespace spca {

// Accumulator for Mackey's orthogonalized projection deflation. B starts
// at the identity and stays an orthogonal projector onto the complement
// of the directions deflated so far; Qacc collects the orthonormal q's.
struct MackeyState {
  explicit MackeyState(std::size_t m)
      : B(Matrix::identity(m)), Qacc(m, 0) {}
  Matrix B;
  Matrix Qacc;
};

struct MackeyStep {
  Matrix X;
  std::vector<double> q;
  // True when p was already in the span of previous q's and the deflation
  // was a no-op (q returned as zero).
  bool degenerate = false;
};

// X_new = X (I - p p^T); p must be unit length. The general form with the
// (p^T p)^{-1} factor is applied when p is not normalized.
Matrix projection_deflate(const Matrix& x, const std::vector<double>& p);

// C_new = (I - p p^T) C (I - p p^T) for symmetric C.
Matrix covariance_projection_deflate(const Matrix& c,
                                     const std::vector<double>& p);

// Gram-Schmidt step: q = B p normalized, X (I - q q^T), B (I - q q^T).
MackeyStep mackey_deflate(const Matrix& x, MackeyState& state,
                          const std::vector<double>& p);

}  // namespace spca
