#include "simgen.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "gpca.hpp"
#include "linalg.hpp"
#include "pca.hpp"
#include "pmd.hpp"
#include "rng.hpp"
#include "spca_zou.hpp"

namespace spca {

namespace {

Matrix spectra_loadings(const std::vector<std::size_t>& starts,
                        std::size_t m) {
  Matrix p(m, starts.size());
  for (std::size_t a = 0; a < starts.size(); ++a)
    for (std::size_t k = 0; k < kSpectralShape.size(); ++k)
      p(starts[a] + k, a) = kSpectralShape[k];
  return p;
}

SimulatedDataset finish(Matrix t, Matrix p,
                        std::optional<std::uint64_t> seed) {
  SimulatedDataset d;
  d.X = t * p.transposed();
  d.T_true = std::move(t);
  d.P_true = std::move(p);
  d.nnz_true = count_nonzeros(d.P_true);
  d.seed = seed;
  return d;
}

}  // namespace

SimulatedDataset gen_orthogonal_spectra() {
  Matrix t(5, 2, {0.5, 0.0,
                  0.0, 0.25,
                  0.5, 0.0,
                  0.0, 0.25,
                  0.5, 0.0});
  return finish(std::move(t), spectra_loadings({0, 10}, 20), std::nullopt);
}

SimulatedDataset gen_nonorthogonal_spectra() {
  Matrix t(5, 3, {0.5, 0.25, 0.0,
                  0.5, 0.0, 0.125,
                  0.5, 0.25, 0.0,
                  0.5, 0.0, 0.125,
                  0.0, 0.25, 0.0});
  return finish(std::move(t), spectra_loadings({0, 5, 10}, 20), std::nullopt);
}

SimulatedDataset gen_montecarlo(std::uint64_t seed) {
  constexpr std::size_t n = 50, m = 200, a = 5;
  GaussianStream gs(seed);
  Matrix p = gs.draw_matrix(m, a);
  Matrix w = gs.draw_matrix(m, a);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < a; ++j)
      if (w(i, j) < 1.0) p(i, j) = 0.0;
  // An all-zero loading column is redrawn from the next stream values
  // (vanishingly unlikely at these dimensions, but well defined).
  for (std::size_t j = 0; j < a; ++j) {
    while (norm2(p.col(j)) == 0.0) {
      std::vector<double> pj = gs.draw(m);
      std::vector<double> wj = gs.draw(m);
      for (std::size_t i = 0; i < m; ++i)
        p(i, j) = wj[i] < 1.0 ? 0.0 : pj[i];
    }
  }
  Matrix t = gs.draw_matrix(n, a);
  for (std::size_t j = 0; j < a; ++j) {
    const double s = std::pow(2.0, -static_cast<double>(j));
    for (std::size_t i = 0; i < n; ++i) t(i, j) *= s;
  }
  return finish(std::move(t), std::move(p), seed);
}

FactorModel fit_method(Method method, const Matrix& x, std::size_t ncomp,
                       double knob) {
  switch (method) {
    case Method::kPca:
      return fit_pca(x, ncomp);
    case Method::kSpca:
    case Method::kSpcaSeq: {
      // Nonnegative knob: shared lasso weight. Negative knob: adaptive
      // per-component threshold keeping round(-knob) loadings nonzero
      // (the toolbox-style cardinality stop the reference results use).
      SpcaConfig cfg = make_spca_config(ncomp, knob >= 0.0 ? knob : 0.0);
      if (knob < 0.0)
        cfg.cardinality = static_cast<std::size_t>(std::lround(-knob));
      return method == Method::kSpca
                 ? fit_spca_simultaneous(x, ncomp, cfg)
                 : fit_spca_sequential(x, ncomp, cfg);
    }
    case Method::kPmdPd:
    case Method::kPmdO:
    case Method::kPmdM: {
      PmdConfig cfg;
      cfg.c2 = knob;
      cfg.deflation = method == Method::kPmdPd ? Deflation::kProjection
                      : method == Method::kPmdO ? Deflation::kOrthogonalized
                                                : Deflation::kMackey;
      return fit_pmd(x, ncomp, cfg);
    }
    case Method::kGpcaPd:
    case Method::kGpcaM:
    case Method::kGpcaO: {
      const Deflation d = method == Method::kGpcaPd ? Deflation::kProjection
                          : method == Method::kGpcaM ? Deflation::kMackey
                                                     : Deflation::kOrthogonalized;
      return fit_gpca(x, ncomp, knob, d);
    }
  }
  throw InvalidInput("fit_method: unknown method");
}

namespace {

// Restrictiveness r in [0, 1] maps onto each method's knob so a single
// bisection covers all of them; nnz is non-increasing in r.
double knob_from_r(Method method, const Matrix& x, double r) {
  switch (method) {
    case Method::kSpca:
    case Method::kSpcaSeq: {
      // Per-component cardinality budget, from all M variables (r = 0)
      // down to a single one (r = 1); negative sign selects the adaptive
      // threshold in fit_method.
      const double m = static_cast<double>(x.cols());
      return -(m - r * (m - 1.0));
    }
    case Method::kPmdPd:
    case Method::kPmdO:
    case Method::kPmdM: {
      const double hi = std::sqrt(static_cast<double>(x.cols()));
      return hi + r * (1.0 - hi);
    }
    case Method::kGpcaPd:
    case Method::kGpcaM:
    case Method::kGpcaO:
      return 0.05 + r * 0.945;
    case Method::kPca:
      return 0.0;
  }
  return 0.0;
}

std::size_t nnz_at(Method method, const Matrix& x, std::size_t ncomp,
                   double knob) {
  try {
    return count_nonzeros(fit_method(method, x, ncomp, knob).P);
  } catch (const DegenerateComponent&) {
    return 0;  // fully thresholded: maximally restrictive outcome
  } catch (const RankExhausted&) {
    return 0;
  }
}

}  // namespace

Calibration calibrate_sparsity(Method method, const Matrix& x,
                               std::size_t target_nnz, std::size_t ncomp) {
  if (method == Method::kPca)
    throw InvalidInput("calibrate_sparsity: PCA has no sparsity knob");

  struct Sample {
    double r;
    std::size_t nnz;
  };
  std::vector<Sample> samples;
  auto eval = [&](double r) {
    const std::size_t nnz = nnz_at(method, x, ncomp, knob_from_r(method, x, r));
    samples.push_back({r, nnz});
    return nnz;
  };
  auto gap = [&](std::size_t nnz) {
    return nnz > target_nnz ? nnz - target_nnz : target_nnz - nnz;
  };

  Calibration best;
  double best_r = 0.0;
  std::size_t best_gap = static_cast<std::size_t>(-1);
  auto consider = [&](double r, std::size_t nnz) {
    const std::size_t g = gap(nnz);
    // Ties go to the least restrictive knob.
    if (g < best_gap || (g == best_gap && r < best_r)) {
      best_gap = g;
      best_r = r;
      best.achieved_nnz = nnz;
    }
  };

  const std::size_t nnz_lo = eval(0.0);
  consider(0.0, nnz_lo);
  if (nnz_lo > target_nnz) {
    const std::size_t nnz_hi = eval(1.0);
    consider(1.0, nnz_hi);
    if (nnz_hi < target_nnz) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 25; ++it) {
        const double mid = 0.5 * (lo + hi);
        const std::size_t nnz = eval(mid);
        consider(mid, nnz);
        if (nnz == target_nnz) break;
        if (nnz > target_nnz)
          lo = mid;
        else
          hi = mid;
      }
    }
  }

  // Flag when the samples are not monotone in restrictiveness.
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.r < b.r; });
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].nnz > samples[i - 1].nnz) best.warning = true;

  best.knob = knob_from_r(method, x, best_r);
  return best;
}

}  // namespace spca
