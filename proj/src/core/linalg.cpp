#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spca {

namespace {

// One-sided Jacobi on an n x m matrix with n >= m: rotates column pairs
// until mutually orthogonal. Deterministic sweep order, so results are
// reproducible across runs.
struct JacobiSvd {
  Matrix B;
  Matrix V;
};

JacobiSvd one_sided_jacobi(const Matrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  JacobiSvd j{a, Matrix::identity(m)};
  Matrix& b = j.B;
  Matrix& v = j.V;
  const double tol = 1e-28;  // squared relative off-diagonal threshold
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          alpha += bp * bp;
          beta += bq * bq;
          gamma += bp * bq;
        }
        if (gamma * gamma <= tol * alpha * beta) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double bp = b(i, p), bq = b(i, q);
          b(i, p) = c * bp - s * bq;
          b(i, q) = s * bp + c * bq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  return j;
}

// Fills zero columns of U with unit vectors orthogonal to the nonzero
// ones so that U keeps orthonormal columns even for rank-deficient input.
void complete_basis(Matrix& u, std::size_t first_empty) {
  const std::size_t n = u.rows(), m = u.cols();
  std::size_t next = first_empty;
  for (std::size_t e = 0; e < n && next < m; ++e) {
    std::vector<double> cand(n, 0.0);
    cand[e] = 1.0;
    for (std::size_t j = 0; j < next; ++j) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += u(i, j) * cand[i];
      for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * u(i, j);
    }
    const double nn = norm2(cand);
    if (nn < 1e-8) continue;
    scale_inplace(cand, 1.0 / nn);
    u.set_col(next, cand);
    ++next;
  }
}

void apply_sign_convention(Matrix& u, Matrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double a = std::fabs(v(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < 0.0) {
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
    }
  }
}

}  // namespace

SvdResult svd(const Matrix& x) {
  if (x.empty()) throw InvalidInput("svd: empty matrix");
  if (!x.all_finite()) throw InvalidInput("svd: non-finite input");
  const bool flip = x.rows() < x.cols();
  const Matrix work = flip ? x.transposed() : x;
  const std::size_t n = work.rows(), m = work.cols();

  JacobiSvd j = one_sided_jacobi(work);

  std::vector<double> norms(m);
  for (std::size_t q = 0; q < m; ++q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += j.B(i, q) * j.B(i, q);
    norms[q] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  const double smax = m ? norms[order[0]] : 0.0;
  const double utiny = std::max(1e-300, 1e-14 * smax);

  Matrix u(n, m), v(m, m);
  std::vector<double> s(m);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t q = order[k];
    s[k] = norms[q];
    for (std::size_t i = 0; i < m; ++i) v(i, k) = j.V(i, q);
    if (norms[q] > utiny) {
      for (std::size_t i = 0; i < n; ++i) u(i, k) = j.B(i, q) / norms[q];
      nonzero = k + 1;
    }
  }
  complete_basis(u, nonzero);

  SvdResult out;
  if (flip) {
    out.U = std::move(v);
    out.V = std::move(u);
  } else {
    out.U = std::move(u);
    out.V = std::move(v);
  }
  out.S = std::move(s);
  apply_sign_convention(out.U, out.V);
  return out;
}

QrResult qr(const Matrix& t) {
  const std::size_t n = t.rows(), m = t.cols();
  if (n < m) throw ShapeError("qr: fewer rows than columns");
  Matrix r = t;  // n x m working copy, reduced in place
  std::vector<std::vector<double>> reflectors;
  reflectors.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> v(n, 0.0);
    double nrm = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = r(i, k);
      nrm += v[i] * v[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) {
      reflectors.emplace_back();  // no-op reflector
      continue;
    }
    const double alpha = (v[k] >= 0.0 ? -nrm : nrm);
    v[k] -= alpha;
    const double vn = norm2(v);
    if (vn < 1e-300) {
      reflectors.emplace_back();
      continue;
    }
    scale_inplace(v, 1.0 / vn);
    for (std::size_t j = k; j < m; ++j) {
      double proj = 0.0;
      for (std::size_t i = k; i < n; ++i) proj += v[i] * r(i, j);
      for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * proj * v[i];
    }
    reflectors.push_back(std::move(v));
  }
  // Thin Q: apply reflectors in reverse to the first m identity columns.
  Matrix q(n, m);
  for (std::size_t j = 0; j < m; ++j) q(j, j) = 1.0;
  for (std::size_t kk = reflectors.size(); kk-- > 0;) {
    const auto& v = reflectors[kk];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      double proj = 0.0;
      for (std::size_t i = kk; i < n; ++i) proj += v[i] * q(i, j);
      for (std::size_t i = kk; i < n; ++i) q(i, j) -= 2.0 * proj * v[i];
    }
  }
  QrResult out;
  out.Rf = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) out.Rf(i, j) = r(i, j);
  out.Qf = std::move(q);
  // Nonnegative diagonal of R, sign absorbed into Q.
  for (std::size_t k = 0; k < m; ++k) {
    if (out.Rf(k, k) < 0.0) {
      for (std::size_t j = k; j < m; ++j) out.Rf(k, j) = -out.Rf(k, j);
      for (std::size_t i = 0; i < n; ++i) out.Qf(i, k) = -out.Qf(i, k);
    }
  }
  return out;
}

Matrix pinv(const Matrix& g) {
  SvdResult d = svd(g);
  const double smax = d.S.empty() ? 0.0 : d.S[0];
  const double cut = 1e-12 * smax;
  Matrix out(g.cols(), g.rows());
  for (std::size_t k = 0; k < d.S.size(); ++k) {
    if (d.S[k] <= cut) continue;
    const double inv = 1.0 / d.S[k];
    for (std::size_t i = 0; i < g.cols(); ++i) {
      const double vi = d.V(i, k) * inv;
      if (vi == 0.0) continue;
      for (std::size_t j = 0; j < g.rows(); ++j) out(i, j) += vi * d.U(j, k);
    }
  }
  return out;
}

std::vector<double> soft_threshold(const std::vector<double>& x, double delta) {
  if (delta < 0.0) throw InvalidInput("soft_threshold: negative delta");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::fabs(x[i]) - delta;
    out[i] = a > 0.0 ? (x[i] > 0.0 ? a : -a) : 0.0;
  }
  return out;
}

double soft_threshold_delta_for_l1(const std::vector<double>& x, double c) {
  std::vector<double> s = x;
  const double n = normalize(s);
  if (n == 0.0) return 0.0;
  if (norm1(s) <= c + 1e-12) return 0.0;
  double lo = 0.0;
  double hi = 0.0;
  for (double xi : x) hi = std::max(hi, std::fabs(xi));
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    std::vector<double> p = soft_threshold(x, mid);
    const double nn = normalize(p);
    const double l1 = nn > 0.0 ? norm1(p) : 0.0;
    if (nn == 0.0 || l1 <= c) {
      hi = mid;
      if (std::fabs(l1 - c) <= 1e-6) break;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> leading_right_singular_vector(const Matrix& x) {
  const std::size_t m = x.cols();
  // Gram matrix power iteration; deterministic start at the column of
  // largest norm.
  Matrix g = x.transposed() * x;
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (g(j, j) > best) {
      best = g(j, j);
      arg = j;
    }
  }
  if (best <= 1e-300) return std::vector<double>(m, 0.0);
  std::vector<double> v(m, 0.0);
  v[arg] = 1.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w = g.mult_vec(v);
    if (normalize(w) == 0.0) return std::vector<double>(m, 0.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      diff = std::max(diff, std::fabs(std::fabs(w[i]) - std::fabs(v[i])));
    v = std::move(w);
    if (diff < 1e-14 && it > 2) break;
  }
  // Sign convention: largest-magnitude entry positive.
  best = 0.0;
  arg = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::fabs(v[i]) > best) {
      best = std::fabs(v[i]);
      arg = i;
    }
  }
  if (v[arg] < 0.0) scale_inplace(v, -1.0);
  return v;
}

std::size_t numerical_rank(const Matrix& x, double tol) {
  SvdResult d = svd(x);
  std::size_t r = 0;
  for (double s : d.S)
    if (s > tol) ++r;
  return r;
}

}  // namespace spca
