#include "model.hpp"

#include <cmath>

#include "errors.hpp"

namespace spca {

std::string to_string(Method m) {
  switch (m) {
    case Method::kPca: return "PCA";
    case Method::kSpca: return "SPCA";
    case Method::kSpcaSeq: return "SPCA-Sq";
    case Method::kPmdPd: return "PMD-PD";
    case Method::kPmdO: return "PMD-O";
    case Method::kPmdM: return "PMD-M";
    case Method::kGpcaPd: return "GPCA-PD";
    case Method::kGpcaM: return "GPCA-M";
    case Method::kGpcaO: return "GPCA-O";
  }
  return "?";
}

std::string to_string(Deflation d) {
  switch (d) {
    case Deflation::kNone: return "none";
    case Deflation::kProjection: return "projection";
    case Deflation::kOrthogonalized: return "orthogonalized";
    case Deflation::kMackey: return "mackey";
  }
  return "?";
}

std::string to_string(ScoreMode s) {
  return s == ScoreMode::kNaive ? "naive" : "corrected";
}

Method method_from_string(const std::string& s) {
  if (s == "PCA" || s == "pca") return Method::kPca;
  if (s == "SPCA" || s == "spca") return Method::kSpca;
  if (s == "SPCA-Sq" || s == "spca-sq" || s == "SPCA-SQ") return Method::kSpcaSeq;
  if (s == "PMD-PD" || s == "pmd-pd") return Method::kPmdPd;
  if (s == "PMD-O" || s == "pmd-o") return Method::kPmdO;
  if (s == "PMD-M" || s == "pmd-m") return Method::kPmdM;
  if (s == "GPCA-PD" || s == "gpca-pd") return Method::kGpcaPd;
  if (s == "GPCA-M" || s == "gpca-m") return Method::kGpcaM;
  if (s == "GPCA-O" || s == "gpca-o") return Method::kGpcaO;
  throw InvalidInput("unknown method tag: " + s);
}

bool is_orthogonalized(Method m) {
  return m == Method::kPmdO || m == Method::kGpcaO;
}

std::size_t count_nonzeros(const Matrix& p, double tol) {
  std::size_t n = 0;
  for (double x : p.data())
    if (std::fabs(x) > tol) ++n;
  return n;
}

}  // namespace spca
