#pragma once

#include <vector>

#include "model.hpp"

namespace spca {

struct SpcaConfig {
  double lambda2 = 1e-6;
  std::vector<double> lambda1;  // per-component lasso weights, length A
  // When nonzero, the lasso weights are ignored and each component's
  // threshold is chosen adaptively so at most `cardinality` loadings stay
  // nonzero (the soft-thresholding analogue of a cardinality stop).
  std::size_t cardinality = 0;
  int max_iter = 300;
  double tol = 1e-6;
};

SpcaConfig make_spca_config(std::size_t ncomp, double lambda1,
                            double lambda2 = 1e-6);

// Simultaneous elastic-net formulation: alternates a closed-form
// thresholded P-step against a Procrustes Q-step on the Gram matrix.
// objective_trace, when given, records the minimized criterion once per
// iteration.
FactorModel fit_spca_simultaneous(const Matrix& x, std::size_t ncomp,
                                  const SpcaConfig& cfg,
                                  std::vector<double>* objective_trace = nullptr);

// One component at a time on the running residual, projection deflation
// in between.
FactorModel fit_spca_sequential(const Matrix& x, std::size_t ncomp,
                                const SpcaConfig& cfg);

}  // namespace spca
