#pragma once

#include <optional>
#include <string>

#include "matrix.hpp"

namespace spca {

enum class Method {
  kPca,
  kSpca,
  kSpcaSeq,
  kPmdPd,
  kPmdO,
  kPmdM,
  kGpcaPd,
  kGpcaM,
  kGpcaO,
};

enum class Deflation { kNone, kProjection, kOrthogonalized, kMackey };

enum class ScoreMode { kNaive, kCorrected };

std::string to_string(Method m);
std::string to_string(Deflation d);
std::string to_string(ScoreMode s);
Method method_from_string(const std::string& s);

bool is_orthogonalized(Method m);

// Fitted factorization X ~ T P^T. T holds the method's native
// (per-component) scores; corrected scores are recomputed on demand from
// X and P. Q carries auxiliary loadings where the method has them.
struct FactorModel {
  Matrix T;
  Matrix P;
  std::optional<Matrix> Q;
  Method method = Method::kPca;
  Deflation deflation = Deflation::kNone;
  ScoreMode score_mode = ScoreMode::kNaive;
};

// Residual of the model against its source data.
struct ResidualMatrix {
  Matrix E;
};

// Entries with |value| <= tol count as zero.
std::size_t count_nonzeros(const Matrix& p, double tol = 1e-9);

}  // namespace spca
