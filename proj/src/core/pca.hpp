#pragma once

#include "model.hpp"

namespace spca {

// Baseline PCA: P = first ncomp right singular vectors, T = X P.
// No implicit centering.
FactorModel fit_pca(const Matrix& x, std::size_t ncomp);

}  // namespace spca
