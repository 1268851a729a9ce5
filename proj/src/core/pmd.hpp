#pragma once

#include <vector>

#include "model.hpp"

namespace spca {

// Rank-one factor of the penalized decomposition: u^T X p maximized
// subject to ||u||2 <= 1, ||p||2 <= 1, ||p||1 <= c2.
struct PmdRankOne {
  std::vector<double> u;
  std::vector<double> p;
  double d = 0.0;
};

struct PmdConfig {
  double c2 = 1.0;  // L1 budget; clamped to [1, sqrt(M)]
  int max_iter = 300;
  double tol = 1e-10;
  Deflation deflation = Deflation::kProjection;
};

// One alternation pass to a fixed point. When u_constraint is given
// (orthonormal columns), u is projected onto its orthogonal complement
// before normalization. objective_trace records u^T X p per iteration.
PmdRankOne pmd_rank_one(const Matrix& x, const PmdConfig& cfg,
                        const Matrix* u_constraint = nullptr,
                        std::vector<double>* objective_trace = nullptr);

// Sequential extraction of ncomp factors under the configured deflation.
FactorModel fit_pmd(const Matrix& x, std::size_t ncomp, const PmdConfig& cfg);

}  // namespace spca
