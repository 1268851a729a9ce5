#include <doctest.h>

#include <cmath>

#include "core/diagnostics.hpp"
#include "core/pca.hpp"
#include "core/pmd.hpp"
#include "core/rng.hpp"
#include "core/simgen.hpp"
#include "oracles.hpp"

using namespace spca;

TEST_CASE("mean absolute cosine on hand-built columns") {
  // Columns (1,0), (0,1), (1,1)/sqrt2: cosines 0, 1/sqrt2, 1/sqrt2.
  Matrix t(2, 3,
           {1, 0, 1 / std::sqrt(2.0), 0, 1, 1 / std::sqrt(2.0)});
  CHECK(macs(t) == doctest::Approx((0.0 + 2.0 / std::sqrt(2.0)) / 3.0)
                       .epsilon(1e-12));
  // Scale invariance of the cosine.
  Matrix t2 = t.scaled(7.0);
  CHECK(macs(t2) == doctest::Approx(macs(t)).epsilon(1e-12));
  // Sign insensitivity.
  Matrix t3 = t;
  t3(0, 2) = -t3(0, 2);
  t3(1, 2) = -t3(1, 2);
  CHECK(macs(t3) == doctest::Approx(macs(t)).epsilon(1e-12));
}

TEST_CASE("degenerate columns and short matrices are rejected") {
  Matrix one_col(3, 1);
  one_col(0, 0) = 1.0;
  CHECK_THROWS_AS(macs(one_col), ShapeError);
  Matrix with_zero(2, 2, {1, 0, 0, 0});
  CHECK_THROWS_AS(macs(with_zero), DegenerateComponent);
}

TEST_CASE("corrected scores solve the least-squares system") {
  GaussianStream g(61);
  for (int rep = 0; rep < 100; ++rep) {
    const Matrix x = g.draw_matrix(6, 5);
    Matrix p = g.draw_matrix(5, 3);
    const Matrix t = corrected_scores(x, p);
    // Oracle: per-row normal equations solved by Gaussian elimination.
    const Matrix gram = p.transposed() * p;
    const Matrix xp = x * p;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      auto row = oracles::solve_dense(gram.data(), xp.row(i), 3);
      for (std::size_t a = 0; a < 3; ++a)
        CHECK(std::fabs(t(i, a) - row[a]) < 1e-10);
    }
    // Residual is orthogonal to the loading span.
    const ResidualMatrix e = residuals(x, t, p);
    CHECK((e.E * p).frobenius_norm() < 1e-9);
  }
}

TEST_CASE("corrected scores tolerate rank-deficient loadings") {
  GaussianStream g(62);
  const Matrix x = g.draw_matrix(6, 4);
  Matrix p(4, 2);
  auto v = g.draw(4);
  normalize(v);
  p.set_col(0, v);
  p.set_col(1, v);  // duplicated column, rank 1
  const Matrix t = corrected_scores(x, p);
  CHECK(t.all_finite());
  const ResidualMatrix e = residuals(x, t, p);
  CHECK((e.E * p).frobenius_norm() < 1e-9);
}

TEST_CASE("exact factorization drives every total to one") {
  const SimulatedDataset d = gen_orthogonal_spectra();
  FactorModel m = fit_pca(d.X, 2);
  StatsReport s = compute_stats(d.X, m, ScoreMode::kNaive);
  CHECK(s.rss < 1e-15);
  CHECK(s.tot_qr == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.tot_t == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.tot_pt == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("corrected totals behave under a truncated model") {
  GaussianStream g(63);
  const Matrix x = g.draw_matrix(20, 8);
  FactorModel m = fit_pca(x, 3);
  StatsReport s = compute_stats(x, m, ScoreMode::kCorrected);
  // Orthogonal P, exact least squares: every split adds to one.
  CHECK(s.tot_pt == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.tot_qr == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.rss > 0.0);
  CHECK(s.rss < 1.0);
}

TEST_CASE("correlated sparse loadings inflate the naive totals") {
  GaussianStream g(64);
  const Matrix x = g.draw_matrix(20, 10);
  PmdConfig cfg;
  cfg.c2 = 1.8;
  cfg.deflation = Deflation::kProjection;
  FactorModel m = fit_pmd(x, 3, cfg);
  StatsReport naive = compute_stats(x, m, ScoreMode::kNaive);
  StatsReport corr = compute_stats(x, m, ScoreMode::kCorrected);
  // Corrected scores are the least-squares optimum for the same P.
  CHECK(corr.rss <= naive.rss + 1e-12);
  CHECK(corr.tot_pt == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("variance split bookkeeping") {
  GaussianStream g(65);
  const Matrix x = g.draw_matrix(12, 6);
  FactorModel m = fit_pca(x, 2);
  const Matrix t = corrected_scores(x, m.P);
  const ResidualMatrix e = residuals(x, t, m.P);
  VarianceSplit v = variance_split_check(x, t, m.P, e.E);
  CHECK(v.defect < 1e-9);
  CHECK(std::fabs(v.cross_trace) < 1e-9);
  CHECK(v.ep_norm < 1e-9);
}

TEST_CASE("shape validation in the report plumbing") {
  GaussianStream g(66);
  const Matrix x = g.draw_matrix(5, 4);
  Matrix p = g.draw_matrix(3, 2);  // wrong variable count
  CHECK_THROWS_AS(naive_scores(x, p), ShapeError);
  CHECK_THROWS_AS(corrected_scores(x, p), ShapeError);
  CHECK_THROWS_AS(rss(Matrix(5, 4), x * g.draw_matrix(4, 2),
                      g.draw_matrix(4, 2)),
                  InvalidInput);
}
