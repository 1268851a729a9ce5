#include "gpca.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "deflation.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace spca {

CorrelationMap correlation_map(const Matrix& x) {
  const std::size_t m = x.cols();
  CorrelationMap out;
  out.map = Matrix(m, m);
  std::vector<double> norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = norm2(x.col(j));
  for (std::size_t j = 0; j < m; ++j) {
    out.map(j, j) = 1.0;
    if (norms[j] == 0.0) out.degenerate_cols.push_back(j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (norms[i] == 0.0) continue;
    const std::vector<double> ci = x.col(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      if (norms[j] == 0.0) continue;
      double v = dot(ci, x.col(j)) / (norms[i] * norms[j]);
      v = std::clamp(v, -1.0, 1.0);
      out.map(i, j) = v;
      out.map(j, i) = v;
    }
  }
  return out;
}

std::vector<VariableGroup> find_groups(const CorrelationMap& map,
                                       double gamma) {
  if (gamma <= 0.0 || gamma >= 1.0)
    throw InvalidInput("find_groups: gamma must lie in (0, 1)");
  const std::size_t m = map.map.cols();
  std::vector<VariableGroup> groups;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < m; ++i) {
    VariableGroup g;
    for (std::size_t j = 0; j < m; ++j)
      if (std::fabs(map.map(i, j)) >= gamma) g.indices.push_back(j);
    if (g.indices.empty()) g.indices.push_back(i);
    if (seen.insert(g.indices).second) groups.push_back(std::move(g));
  }
  return groups;
}

namespace {

struct Candidate {
  std::vector<double> loading;  // full length, zero off group
  double variance = -1.0;
};

Candidate best_candidate(const Matrix& x,
                         const std::vector<VariableGroup>& groups) {
  Candidate best;
  for (const auto& g : groups) {
    const Matrix sub = x.select_cols(g.indices);
    std::vector<double> v = leading_right_singular_vector(sub);
    if (norm2(v) == 0.0) continue;
    const double var = [&] {
      std::vector<double> xv = sub.mult_vec(v);
      return dot(xv, xv);
    }();
    // Strict comparison: ties resolved toward the earliest-seeded group.
    if (var > best.variance + 1e-15 * std::max(1.0, best.variance)) {
      best.variance = var;
      best.loading.assign(x.cols(), 0.0);
      for (std::size_t k = 0; k < g.indices.size(); ++k)
        best.loading[g.indices[k]] = v[k];
    }
  }
  return best;
}

}  // namespace

FactorModel fit_gpca(const Matrix& x, std::size_t ncomp, double gamma,
                     Deflation deflation) {
  if (ncomp < 1 || ncomp > std::min(x.rows(), x.cols()))
    throw ShapeError("fit_gpca: component count out of range");
  if (deflation == Deflation::kNone)
    throw InvalidInput("fit_gpca: a deflation scheme is required");

  Matrix xcur = x;
  Matrix t(x.rows(), 0), p(x.cols(), 0);
  Matrix ubasis(x.rows(), 0);
  MackeyState mackey(x.cols());

  for (std::size_t a = 0; a < ncomp; ++a) {
    const CorrelationMap map = correlation_map(xcur);
    const auto groups = find_groups(map, gamma);
    Candidate cand = best_candidate(xcur, groups);
    if (cand.variance <= 1e-20)
      throw RankExhausted("fit_gpca: all groups yield zero variance");

    std::vector<double> score = xcur.mult_vec(cand.loading);
    t.append_col(score);
    p.append_col(cand.loading);

    switch (deflation) {
      case Deflation::kProjection:
        xcur = projection_deflate(xcur, cand.loading);
        break;
      case Deflation::kMackey:
        xcur = mackey_deflate(xcur, mackey, cand.loading).X;
        break;
      case Deflation::kOrthogonalized: {
        std::vector<double> u = score;
        if (normalize(u) > 0.0) {
          ubasis.append_col(u);
          ubasis = qr(ubasis).Qf;
          // Remove the span of the score basis from the rows of X.
          Matrix proj = ubasis * (ubasis.transposed() * x);
          xcur = x - proj;
        }
        break;
      }
      case Deflation::kNone:
        break;
    }
  }

  FactorModel m;
  switch (deflation) {
    case Deflation::kProjection: m.method = Method::kGpcaPd; break;
    case Deflation::kMackey: m.method = Method::kGpcaM; break;
    default: m.method = Method::kGpcaO; break;
  }
  m.deflation = deflation;
  m.T = std::move(t);
  m.P = std::move(p);
  if (deflation == Deflation::kMackey) m.Q = mackey.Qacc;
  return m;
}

}  // namespace spca
