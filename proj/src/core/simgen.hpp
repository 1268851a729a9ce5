#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "model.hpp"

namespace spca {

// Noise-free ground-truth factorization X = T_true P_true^T.
struct SimulatedDataset {
  Matrix X;
  Matrix T_true;
  Matrix P_true;
  std::size_t nnz_true = 0;
  std::optional<std::uint64_t> seed;
};

// The 10-point spectral band profile shared by the two fixed examples.
inline constexpr std::array<double, 10> kSpectralShape = {
    0.1, 0.3, 0.5, 0.7, 0.9, 0.9, 0.7, 0.5, 0.3, 0.1};

// 5x20, rank 2, loadings on {1-10} and {11-20}, orthogonal scores.
SimulatedDataset gen_orthogonal_spectra();

// 5x20, rank 3, loadings on {1-10}, {6-15}, {11-20}; overlapping supports
// and correlated scores.
SimulatedDataset gen_nonorthogonal_spectra();

// 50x200, rank <= 5: sparse N(0,1) loadings (kept where the auxiliary
// draw exceeds 1), N(0,1) scores with amplitude halved per component.
SimulatedDataset gen_montecarlo(std::uint64_t seed);

struct Calibration {
  double knob = 0.0;           // lambda1, c2 or gamma depending on method
  std::size_t achieved_nnz = 0;
  bool warning = false;        // non-monotone bracket observed
};

// Bisection on the method's scalar sparsity knob toward target_nnz.
Calibration calibrate_sparsity(Method method, const Matrix& x,
                               std::size_t target_nnz, std::size_t ncomp);

// Fits method on x with the given scalar knob (ignored for PCA).
FactorModel fit_method(Method method, const Matrix& x, std::size_t ncomp,
                       double knob);

}  // namespace spca
