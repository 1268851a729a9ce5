#pragma once

#include "model.hpp"

namespace spca {

// Correlation/variance statistics for one fitted model under one score
// mode. MACS and MACL live in [0, 1]; the three totals should all equal 1
// when variance is accounted for correctly.
struct StatsReport {
  double macs = 0.0;
  double macl = 0.0;
  double rss = 0.0;
  double tot_qr = 0.0;
  double tot_t = 0.0;
  double tot_pt = 0.0;
  ScoreMode score_mode = ScoreMode::kNaive;
};

struct VarianceSplit {
  double defect = 0.0;        // | ||X||^2 - ||T P^T||^2 - ||E||^2 |
  double cross_trace = 0.0;   // trc(P T^T E)
  double ep_norm = 0.0;       // ||E P||_F
  double te_norm = 0.0;       // ||T^T E||_F
};

Matrix naive_scores(const Matrix& x, const Matrix& p);
// Least-squares scores X P (P^T P)^+; tolerates rank-deficient P.
Matrix corrected_scores(const Matrix& x, const Matrix& p);
ResidualMatrix residuals(const Matrix& x, const Matrix& t, const Matrix& p);

// Mean absolute pairwise (non-centered) cosine of score columns.
double macs(const Matrix& t);
// Mean absolute below-diagonal entry of P^T P for unit-normalized columns.
double macl(const Matrix& p);

double rss(const Matrix& x, const Matrix& t, const Matrix& p);
double qr_variance(const Matrix& t);
double tot_qr(const Matrix& t, const ResidualMatrix& e, const Matrix& x);
double tot_t(const Matrix& t, const ResidualMatrix& e, const Matrix& x);
double tot_pt(const Matrix& t, const Matrix& p, const ResidualMatrix& e,
              const Matrix& x);

VarianceSplit variance_split_check(const Matrix& x, const Matrix& t,
                                   const Matrix& p, const Matrix& e);

// All statistics for the model's native scores (naive) or for scores
// recomputed with the least-squares correction.
StatsReport compute_stats(const Matrix& x, const FactorModel& model,
                          ScoreMode mode);

}  // namespace spca
