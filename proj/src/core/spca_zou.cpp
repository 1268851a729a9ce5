#include "spca_zou.hpp"

#include <algorithm>
#include <cmath>

#include "deflation.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace spca {

namespace {

void validate(const Matrix& x, std::size_t ncomp, const SpcaConfig& cfg) {
  if (ncomp < 1 || ncomp > std::min(x.rows(), x.cols()))
    throw ShapeError("spca: component count out of range");
  if (cfg.lambda1.size() != ncomp)
    throw InvalidInput("spca: lambda1 length must equal component count");
  if (cfg.lambda2 < 0.0)
    throw InvalidInput("spca: negative ridge weight");
  for (double l : cfg.lambda1)
    if (l < 0.0) throw InvalidInput("spca: negative lasso weight");
}

// Smallest threshold keeping at most k entries nonzero: the (k+1)-th
// largest magnitude (0 when k covers the whole vector).
double cardinality_threshold(const std::vector<double>& gq, std::size_t k) {
  if (k >= gq.size()) return 0.0;
  std::vector<double> mag(gq.size());
  for (std::size_t i = 0; i < gq.size(); ++i) mag[i] = std::fabs(gq[i]);
  std::sort(mag.rbegin(), mag.rend());
  return mag[k];
}

// Closed-form naive-elastic-net column update for orthonormal responses.
std::vector<double> p_step(const std::vector<double>& gq, double lambda1,
                           double lambda2, std::size_t cardinality, int comp) {
  const double delta =
      cardinality > 0 ? cardinality_threshold(gq, cardinality) : lambda1 / 2.0;
  std::vector<double> p = soft_threshold(gq, delta);
  bool any = false;
  for (double v : p)
    if (v != 0.0) {
      any = true;
      break;
    }
  if (!any)
    throw DegenerateComponent("spca: loading fully thresholded", comp);
  scale_inplace(p, 1.0 / (1.0 + lambda2));
  return p;
}

// Q = U V^T from the thin SVD of G P; the orthonormal maximizer of
// trc(P^T G Q).
Matrix procrustes(const Matrix& gp) {
  SvdResult d = svd(gp);
  return d.U * d.V.transposed();
}

double objective(const Matrix& g, const Matrix& p, const Matrix& q,
                 const SpcaConfig& cfg) {
  double acc = 0.0;
  for (std::size_t a = 0; a < p.cols(); ++a) {
    const std::vector<double> pa = p.col(a);
    acc += (1.0 + cfg.lambda2) * dot(pa, pa);
    acc -= 2.0 * dot(pa, g.mult_vec(q.col(a)));
    acc += cfg.lambda1[a] * norm1(pa);
  }
  return acc;
}

}  // namespace

SpcaConfig make_spca_config(std::size_t ncomp, double lambda1,
                            double lambda2) {
  SpcaConfig cfg;
  cfg.lambda1.assign(ncomp, lambda1);
  cfg.lambda2 = lambda2;
  return cfg;
}

FactorModel fit_spca_simultaneous(const Matrix& x, std::size_t ncomp,
                                  const SpcaConfig& cfg,
                                  std::vector<double>* objective_trace) {
  validate(x, ncomp, cfg);
  const Matrix g = x.transposed() * x;
  Matrix q = svd(x).V.head_cols(ncomp);
  Matrix p(x.cols(), ncomp);
  double prev_norm = 0.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    Matrix p_new(x.cols(), ncomp);
    for (std::size_t a = 0; a < ncomp; ++a)
      p_new.set_col(a, p_step(g.mult_vec(q.col(a)), cfg.lambda1[a],
                              cfg.lambda2, cfg.cardinality,
                              static_cast<int>(a)));
    q = procrustes(g * p_new);
    if (objective_trace)
      objective_trace->push_back(objective(g, p_new, q, cfg));
    const double diff = (p_new - p).frobenius_norm();
    const double nrm = p_new.frobenius_norm();
    p = std::move(p_new);
    if (it > 0 && diff <= cfg.tol * std::max(prev_norm, nrm)) break;
    prev_norm = nrm;
  }
  // Unit-norm sparse loadings; Q recomputed for the normalized P so the
  // auxiliary loadings stay consistent with the reported model.
  for (std::size_t a = 0; a < ncomp; ++a) {
    std::vector<double> pa = p.col(a);
    if (normalize(pa) == 0.0)
      throw DegenerateComponent("spca: zero loading", static_cast<int>(a));
    p.set_col(a, pa);
  }
  FactorModel m;
  m.method = Method::kSpca;
  m.deflation = Deflation::kNone;
  m.P = std::move(p);
  m.Q = procrustes(g * m.P);
  m.T = x * m.P;
  return m;
}

FactorModel fit_spca_sequential(const Matrix& x, std::size_t ncomp,
                                const SpcaConfig& cfg) {
  validate(x, ncomp, cfg);
  Matrix xr = x;
  Matrix p(x.cols(), 0);
  Matrix qacc(x.cols(), 0);
  for (std::size_t a = 0; a < ncomp; ++a) {
    const Matrix g = xr.transposed() * xr;
    std::vector<double> q = leading_right_singular_vector(xr);
    if (norm2(q) == 0.0)
      throw DegenerateComponent("spca sequential: residual exhausted",
                                static_cast<int>(a));
    std::vector<double> pa;
    for (int it = 0; it < cfg.max_iter; ++it) {
      std::vector<double> p_new =
          p_step(g.mult_vec(q), cfg.lambda1[a], cfg.lambda2, cfg.cardinality,
                 static_cast<int>(a));
      q = g.mult_vec(p_new);
      if (normalize(q) == 0.0)
        throw DegenerateComponent("spca sequential: degenerate direction",
                                  static_cast<int>(a));
      if (!pa.empty()) {
        double diff = 0.0, nrm = 0.0;
        for (std::size_t i = 0; i < pa.size(); ++i) {
          diff += (p_new[i] - pa[i]) * (p_new[i] - pa[i]);
          nrm += p_new[i] * p_new[i];
        }
        pa = std::move(p_new);
        if (std::sqrt(diff) <= cfg.tol * std::sqrt(nrm)) break;
      } else {
        pa = std::move(p_new);
      }
    }
    normalize(pa);
    p.append_col(pa);
    qacc.append_col(q);
    xr = projection_deflate(xr, pa);
  }
  FactorModel m;
  m.method = Method::kSpcaSeq;
  m.deflation = Deflation::kProjection;
  m.P = std::move(p);
  m.Q = std::move(qacc);
  // Scores follow the uncorrected per-component convention T = X P.
  m.T = x * m.P;
  return m;
}

}  // namespace spca
