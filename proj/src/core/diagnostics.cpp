#include "diagnostics.hpp"

#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"

namespace spca {

Matrix naive_scores(const Matrix& x, const Matrix& p) {
  if (x.cols() != p.rows()) throw ShapeError("naive_scores: shape mismatch");
  return x * p;
}

Matrix corrected_scores(const Matrix& x, const Matrix& p) {
  if (x.cols() != p.rows())
    throw ShapeError("corrected_scores: shape mismatch");
  Matrix g = p.transposed() * p;
  return x * p * pinv(g);
}

ResidualMatrix residuals(const Matrix& x, const Matrix& t, const Matrix& p) {
  if (t.rows() != x.rows() || p.rows() != x.cols() || t.cols() != p.cols())
    throw ShapeError("residuals: shape mismatch");
  return ResidualMatrix{x - t * p.transposed()};
}

namespace {

double mean_abs_below_diagonal_cosine(const Matrix& m, const char* what) {
  const std::size_t a = m.cols();
  if (a < 2) throw ShapeError(std::string(what) + ": need at least 2 columns");
  std::vector<double> norms(a);
  for (std::size_t j = 0; j < a; ++j) {
    norms[j] = norm2(m.col(j));
    if (norms[j] == 0.0)
      throw DegenerateComponent(std::string(what) + ": zero column",
                                static_cast<int>(j));
  }
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < a; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      acc += std::fabs(dot(m.col(i), m.col(j))) / (norms[i] * norms[j]);
      ++pairs;
    }
  }
  return acc / static_cast<double>(pairs);
}

}  // namespace

double macs(const Matrix& t) {
  return mean_abs_below_diagonal_cosine(t, "macs");
}

double macl(const Matrix& p) {
  // Columns are normalized before the product, so this is the same
  // cosine form.
  return mean_abs_below_diagonal_cosine(p, "macl");
}

double rss(const Matrix& x, const Matrix& t, const Matrix& p) {
  const double total = x.sumsq();
  if (total == 0.0) throw InvalidInput("rss: zero data matrix");
  return residuals(x, t, p).E.sumsq() / total;
}

double qr_variance(const Matrix& t) {
  if (t.rows() < t.cols()) throw ShapeError("qr_variance: rows < cols");
  QrResult f = qr(t);
  double acc = 0.0;
  for (std::size_t k = 0; k < f.Rf.rows(); ++k)
    acc += f.Rf(k, k) * f.Rf(k, k);
  return acc;
}

double tot_qr(const Matrix& t, const ResidualMatrix& e, const Matrix& x) {
  if (e.E.rows() != x.rows() || e.E.cols() != x.cols())
    throw ShapeError("tot_qr: residual shape mismatch");
  return (qr_variance(t) + e.E.sumsq()) / x.sumsq();
}

double tot_t(const Matrix& t, const ResidualMatrix& e, const Matrix& x) {
  if (e.E.rows() != x.rows() || e.E.cols() != x.cols())
    throw ShapeError("tot_t: residual shape mismatch");
  return (t.sumsq() + e.E.sumsq()) / x.sumsq();
}

double tot_pt(const Matrix& t, const Matrix& p, const ResidualMatrix& e,
              const Matrix& x) {
  if (t.cols() != p.cols() || p.rows() != x.cols())
    throw ShapeError("tot_pt: shape mismatch");
  // trc(P T^T T P^T) = ||T P^T||_F^2.
  const double captured = (t * p.transposed()).sumsq();
  return (captured + e.E.sumsq()) / x.sumsq();
}

VarianceSplit variance_split_check(const Matrix& x, const Matrix& t,
                                   const Matrix& p, const Matrix& e) {
  VarianceSplit out;
  const Matrix xhat = t * p.transposed();
  out.defect = std::fabs(x.sumsq() - xhat.sumsq() - e.sumsq());
  // trc(P T^T E) = sum_ij (T P^T)_ij E_ij.
  double cross = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      cross += xhat(i, j) * e(i, j);
  out.cross_trace = cross;
  out.ep_norm = (e * p).frobenius_norm();
  out.te_norm = (t.transposed() * e).frobenius_norm();
  return out;
}

StatsReport compute_stats(const Matrix& x, const FactorModel& model,
                          ScoreMode mode) {
  const Matrix t = mode == ScoreMode::kNaive
                       ? model.T
                       : corrected_scores(x, model.P);
  const ResidualMatrix e = residuals(x, t, model.P);
  StatsReport r;
  r.score_mode = mode;
  r.macs = model.T.cols() >= 2 ? macs(t) : 0.0;
  r.macl = model.P.cols() >= 2 ? macl(model.P) : 0.0;
  r.rss = rss(x, t, model.P);
  r.tot_qr = tot_qr(t, e, x);
  r.tot_t = tot_t(t, e, x);
  r.tot_pt = tot_pt(t, model.P, e, x);
  return r;
}

}  // namespace spca
