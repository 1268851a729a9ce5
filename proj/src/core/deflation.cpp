#include "deflation.hpp"

#include <cmath>

#include "errors.hpp"

namespace spca {

namespace {

// X - (X p) p^T / (p^T p), without forming the projector.
Matrix deflate_rows(const Matrix& x, const std::vector<double>& p,
                    double psq) {
  std::vector<double> xp = x.mult_vec(p);
  Matrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double a = xp[i] / psq;
    if (a == 0.0) continue;
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) -= a * p[j];
  }
  return out;
}

}  // namespace

Matrix projection_deflate(const Matrix& x, const std::vector<double>& p) {
  if (p.size() != x.cols())
    throw ShapeError("projection_deflate: loading length mismatch");
  const double psq = dot(p, p);
  if (psq == 0.0) throw InvalidInput("projection_deflate: zero loading");
  return deflate_rows(x, p, psq);
}

Matrix covariance_projection_deflate(const Matrix& c,
                                     const std::vector<double>& p) {
  if (c.rows() != c.cols() || p.size() != c.cols())
    throw ShapeError("covariance_projection_deflate: shape mismatch");
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = i + 1; j < c.cols(); ++j)
      if (std::fabs(c(i, j) - c(j, i)) > 1e-9)
        throw InvalidInput("covariance_projection_deflate: asymmetric input");
  const double psq = dot(p, p);
  if (psq == 0.0)
    throw InvalidInput("covariance_projection_deflate: zero loading");
  Matrix half = deflate_rows(c, p, psq);
  return deflate_rows(half.transposed(), p, psq);
}

MackeyStep mackey_deflate(const Matrix& x, MackeyState& state,
                          const std::vector<double>& p) {
  if (p.size() != x.cols() || state.B.rows() != x.cols())
    throw ShapeError("mackey_deflate: shape mismatch");
  MackeyStep step;
  std::vector<double> q = state.B.mult_vec(p);
  if (norm2(q) < 1e-10) {
    // p lies in the span of previously deflated directions.
    step.X = x;
    step.q = std::vector<double>(x.cols(), 0.0);
    step.degenerate = true;
    return step;
  }
  normalize(q);
  step.X = projection_deflate(x, q);
  state.B = deflate_rows(state.B, q, 1.0);
  state.Qacc.append_col(q);
  step.q = std::move(q);
  return step;
}

}  // namespace spca
