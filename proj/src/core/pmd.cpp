#include "pmd.hpp"

#include <algorithm>
#include <cmath>

#include "deflation.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace spca {

namespace {

double clamp_c2(double c2, std::size_t m) {
  // Below 1 no unit-L2 vector is feasible; above sqrt(M) the constraint
  // is vacuous.
  return std::clamp(c2, 1.0, std::sqrt(static_cast<double>(m)));
}

void project_out(std::vector<double>& u, const Matrix& basis) {
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    double proj = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) proj += basis(i, k) * u[i];
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= proj * basis(i, k);
  }
}

}  // namespace

PmdRankOne pmd_rank_one(const Matrix& x, const PmdConfig& cfg,
                        const Matrix* u_constraint,
                        std::vector<double>* objective_trace) {
  if (x.sumsq() == 0.0) throw InvalidInput("pmd: zero matrix");
  const double c2 = clamp_c2(cfg.c2, x.cols());

  // Initialize from the part of X visible to an admissible u: with a
  // constraint basis U, that is (I - U U^T) X. Starting from the raw
  // leading direction can leave u with nothing after the projection.
  std::vector<double> p;
  if (u_constraint && u_constraint->cols() > 0) {
    Matrix xp = x;
    for (std::size_t k = 0; k < u_constraint->cols(); ++k) {
      const std::vector<double> uk = u_constraint->col(k);
      const std::vector<double> xtu = xp.tmult_vec(uk);
      for (std::size_t i = 0; i < xp.rows(); ++i)
        for (std::size_t j = 0; j < xp.cols(); ++j)
          xp(i, j) -= uk[i] * xtu[j];
    }
    p = leading_right_singular_vector(xp);
  } else {
    p = leading_right_singular_vector(x);
  }
  if (norm2(p) == 0.0)
    throw DegenerateComponent("pmd: no admissible left vector", 0);
  std::vector<double> u = x.mult_vec(p);
  if (u_constraint) project_out(u, *u_constraint);
  if (normalize(u) == 0.0)
    throw DegenerateComponent("pmd: no admissible left vector", 0);

  double d_prev = 0.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    std::vector<double> xtu = x.tmult_vec(u);
    const double delta = soft_threshold_delta_for_l1(xtu, c2);
    std::vector<double> p_new = soft_threshold(xtu, delta);
    if (normalize(p_new) == 0.0)
      throw DegenerateComponent("pmd: loading fully thresholded", 0);
    std::vector<double> u_new = x.mult_vec(p_new);
    if (u_constraint) project_out(u_new, *u_constraint);
    if (normalize(u_new) == 0.0)
      throw DegenerateComponent("pmd: no admissible left vector", 0);
    const double d = dot(u_new, x.mult_vec(p_new));
    if (objective_trace) objective_trace->push_back(d);
    p = std::move(p_new);
    u = std::move(u_new);
    if (it > 0 && std::fabs(d - d_prev) <= cfg.tol * std::max(1.0, d)) break;
    d_prev = d;
  }
  PmdRankOne out;
  out.d = dot(u, x.mult_vec(p));
  out.u = std::move(u);
  out.p = std::move(p);
  return out;
}

FactorModel fit_pmd(const Matrix& x, std::size_t ncomp, const PmdConfig& cfg) {
  if (ncomp < 1 || ncomp > std::min(x.rows(), x.cols()))
    throw ShapeError("fit_pmd: component count out of range");

  Matrix xr = x;
  Matrix t(x.rows(), 0), p(x.cols(), 0);
  Matrix ubasis(x.rows(), 0);
  MackeyState mackey(x.cols());

  for (std::size_t a = 0; a < ncomp; ++a) {
    PmdRankOne r1;
    try {
      const Matrix* constraint =
          cfg.deflation == Deflation::kOrthogonalized ? &ubasis : nullptr;
      r1 = pmd_rank_one(xr, cfg, constraint);
    } catch (const DegenerateComponent& e) {
      throw DegenerateComponent(e.what(), static_cast<int>(a));
    }
    std::vector<double> score(r1.u);
    scale_inplace(score, r1.d);
    t.append_col(score);
    p.append_col(r1.p);

    switch (cfg.deflation) {
      case Deflation::kProjection: {
        // X <- X - d u p^T
        Matrix next = xr;
        for (std::size_t i = 0; i < xr.rows(); ++i) {
          const double a_i = r1.d * r1.u[i];
          for (std::size_t j = 0; j < xr.cols(); ++j)
            next(i, j) -= a_i * r1.p[j];
        }
        xr = std::move(next);
        break;
      }
      case Deflation::kOrthogonalized: {
        // X untouched; the constraint basis absorbs the factor. QR
        // re-orthonormalization controls drift.
        ubasis.append_col(r1.u);
        ubasis = qr(ubasis).Qf;
        break;
      }
      case Deflation::kMackey: {
        xr = mackey_deflate(xr, mackey, r1.p).X;
        break;
      }
      case Deflation::kNone:
        throw InvalidInput("fit_pmd: a deflation scheme is required");
    }
  }

  FactorModel m;
  switch (cfg.deflation) {
    case Deflation::kProjection: m.method = Method::kPmdPd; break;
    case Deflation::kOrthogonalized: m.method = Method::kPmdO; break;
    default: m.method = Method::kPmdM; break;
  }
  m.deflation = cfg.deflation;
  m.T = std::move(t);
  m.P = std::move(p);
  if (cfg.deflation == Deflation::kMackey) m.Q = mackey.Qacc;
  return m;
}

}  // namespace spca
