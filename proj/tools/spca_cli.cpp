// Command-line harness over the C API.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spca/spca.h"

namespace {

const std::map<std::string, spca_method> kMethods = {
    {"pca", SPCA_METHOD_PCA},         {"spca", SPCA_METHOD_SPCA},
    {"spca-sq", SPCA_METHOD_SPCA_SQ}, {"pmd-pd", SPCA_METHOD_PMD_PD},
    {"pmd-o", SPCA_METHOD_PMD_O},     {"pmd-m", SPCA_METHOD_PMD_M},
    {"gpca-pd", SPCA_METHOD_GPCA_PD}, {"gpca-m", SPCA_METHOD_GPCA_M},
    {"gpca-o", SPCA_METHOD_GPCA_O}};

int die(spca_status rc, const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, spca_last_error());
  return rc == SPCA_ERR_PARSE || rc == SPCA_ERR_INVALID_INPUT ? 2 : 1;
}

struct MatrixGuard {
  spca_matrix* m = nullptr;
  ~MatrixGuard() { spca_matrix_free(m); }
};
struct DatasetGuard {
  spca_dataset* d = nullptr;
  ~DatasetGuard() { spca_dataset_free(d); }
};
struct ModelGuard {
  spca_model* m = nullptr;
  ~ModelGuard() { spca_model_free(m); }
};

// Resolves the sparsity knob: explicit value wins, otherwise calibrate
// toward the target nonzero count.
int resolve_knob(const spca_matrix* x, spca_method method, size_t ncomp,
                 double explicit_knob, bool have_knob, size_t target_nnz,
                 bool have_target, double* knob) {
  if (method == SPCA_METHOD_PCA) {
    *knob = 0.0;
    return 0;
  }
  if (have_knob) {
    *knob = explicit_knob;
    return 0;
  }
  if (!have_target) {
    std::fprintf(stderr,
                 "error: sparse methods need --knob or --target-nnz\n");
    return 2;
  }
  size_t achieved = 0;
  int warning = 0;
  spca_status rc =
      spca_calibrate(x, method, ncomp, target_nnz, knob, &achieved, &warning);
  if (rc != SPCA_OK) return die(rc, "calibrate");
  if (warning)
    std::fprintf(stderr,
                 "warning: sparsity response was not monotone; using best "
                 "candidate (nnz=%zu)\n",
                 achieved);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse PCA toolkit: fitting, diagnostics and simulation"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a simulated dataset");
  std::string sim_kind = "nonorthogonal";
  std::uint64_t sim_seed = 1;
  std::string sim_out, sim_scores_out, sim_loadings_out;
  sim->add_option("--experiment", sim_kind,
                  "orthogonal | nonorthogonal | montecarlo")
      ->check(CLI::IsMember({"orthogonal", "nonorthogonal", "montecarlo"}));
  sim->add_option("--seed", sim_seed, "Monte Carlo seed");
  sim->add_option("--output", sim_out, "data matrix CSV")->required();
  sim->add_option("--scores", sim_scores_out, "true scores CSV");
  sim->add_option("--loadings", sim_loadings_out, "true loadings CSV");

  // fit
  auto* fit = app.add_subcommand("fit", "fit one model to a CSV matrix");
  std::string fit_in, fit_method = "pca", fit_scores_out, fit_loadings_out,
              fit_corrected_out;
  std::size_t fit_ncomp = 2, fit_target = 0;
  double fit_knob = 0.0;
  fit->add_option("--input", fit_in, "data matrix CSV")->required();
  fit->add_option("--method", fit_method, "model variant")
      ->check(CLI::IsMember([] {
        std::vector<std::string> keys;
        for (const auto& kv : kMethods) keys.push_back(kv.first);
        return keys;
      }()));
  fit->add_option("--components", fit_ncomp, "number of components");
  auto* knob_opt = fit->add_option(
      "--knob", fit_knob, "lambda1 / c2 / gamma depending on method");
  auto* target_opt = fit->add_option("--target-nnz", fit_target,
                                     "calibrate the knob toward this count");
  fit->add_option("--loadings", fit_loadings_out, "write loadings CSV");
  fit->add_option("--scores", fit_scores_out, "write native scores CSV");
  fit->add_option("--corrected-scores", fit_corrected_out,
                  "write corrected scores CSV");

  // stats
  auto* stats = app.add_subcommand(
      "stats", "fit and print naive/corrected statistics");
  std::string st_in, st_method = "pca";
  std::size_t st_ncomp = 2, st_target = 0;
  double st_knob = 0.0;
  stats->add_option("--input", st_in, "data matrix CSV")->required();
  stats->add_option("--method", st_method, "model variant");
  stats->add_option("--components", st_ncomp, "number of components");
  auto* st_knob_opt = stats->add_option("--knob", st_knob, "sparsity knob");
  auto* st_target_opt =
      stats->add_option("--target-nnz", st_target, "calibration target");

  // run (config file)
  auto* run = app.add_subcommand("run", "run an experiment config file");
  std::string run_cfg;
  run->add_option("--config", run_cfg, "key = value config file")->required();

  // reproduce
  auto* rep = app.add_subcommand(
      "reproduce", "reproduce the published tables / Monte Carlo study");
  std::string rep_which, rep_dir = "reproduction";
  std::size_t rep_reps = 0;
  std::uint64_t rep_seed = 0;
  rep->add_option("target", rep_which, "table1 | table2 | montecarlo")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "montecarlo"}));
  rep->add_option("--output-dir", rep_dir, "artifact directory");
  rep->add_option("--repetitions", rep_reps, "Monte Carlo repetitions");
  rep->add_option("--seed", rep_seed, "base seed");

  CLI11_PARSE(app, argc, argv);

  if (*sim) {
    DatasetGuard d;
    spca_status rc;
    if (sim_kind == "orthogonal")
      rc = spca_gen_orthogonal_spectra(&d.d);
    else if (sim_kind == "nonorthogonal")
      rc = spca_gen_nonorthogonal_spectra(&d.d);
    else
      rc = spca_gen_montecarlo(sim_seed, &d.d);
    if (rc != SPCA_OK) return die(rc, "simulate");
    if ((rc = spca_matrix_save_csv(spca_dataset_x(d.d), sim_out.c_str())) !=
        SPCA_OK)
      return die(rc, "save data");
    if (!sim_scores_out.empty() &&
        (rc = spca_matrix_save_csv(spca_dataset_scores(d.d),
                                   sim_scores_out.c_str())) != SPCA_OK)
      return die(rc, "save scores");
    if (!sim_loadings_out.empty() &&
        (rc = spca_matrix_save_csv(spca_dataset_loadings(d.d),
                                   sim_loadings_out.c_str())) != SPCA_OK)
      return die(rc, "save loadings");
    std::printf("wrote %s (%zux%zu, %zu nonzero true loadings)\n",
                sim_out.c_str(), spca_matrix_rows(spca_dataset_x(d.d)),
                spca_matrix_cols(spca_dataset_x(d.d)), spca_dataset_nnz(d.d));
    return 0;
  }

  if (*fit || *stats) {
    const bool is_fit = static_cast<bool>(*fit);
    const std::string& in = is_fit ? fit_in : st_in;
    const std::string& mname = is_fit ? fit_method : st_method;
    const std::size_t ncomp = is_fit ? fit_ncomp : st_ncomp;
    MatrixGuard x;
    spca_status rc = spca_matrix_load_csv(in.c_str(), &x.m);
    if (rc != SPCA_OK) return die(rc, "load input");
    const spca_method method = kMethods.at(mname);
    double knob = 0.0;
    const int krc = resolve_knob(
        x.m, method, ncomp, is_fit ? fit_knob : st_knob,
        is_fit ? static_cast<bool>(*knob_opt) : static_cast<bool>(*st_knob_opt),
        is_fit ? fit_target : st_target,
        is_fit ? static_cast<bool>(*target_opt)
               : static_cast<bool>(*st_target_opt),
        &knob);
    if (krc) return krc;
    ModelGuard model;
    if ((rc = spca_fit(x.m, method, ncomp, knob, &model.m)) != SPCA_OK)
      return die(rc, "fit");

    if (is_fit) {
      if (!fit_loadings_out.empty() &&
          (rc = spca_matrix_save_csv(spca_model_loadings(model.m),
                                     fit_loadings_out.c_str())) != SPCA_OK)
        return die(rc, "save loadings");
      if (!fit_scores_out.empty() &&
          (rc = spca_matrix_save_csv(spca_model_scores(model.m),
                                     fit_scores_out.c_str())) != SPCA_OK)
        return die(rc, "save scores");
      if (!fit_corrected_out.empty()) {
        MatrixGuard ts;
        if ((rc = spca_model_corrected_scores(model.m, x.m, &ts.m)) != SPCA_OK)
          return die(rc, "corrected scores");
        if ((rc = spca_matrix_save_csv(ts.m, fit_corrected_out.c_str())) !=
            SPCA_OK)
          return die(rc, "save corrected scores");
      }
      std::printf("%s: %zu components, knob=%.6g, nnz=%zu\n", mname.c_str(),
                  ncomp, knob, spca_model_nnz(model.m));
    } else {
      for (int corrected = 0; corrected < 2; ++corrected) {
        spca_stats s;
        if ((rc = spca_model_stats(model.m, x.m, corrected, &s)) != SPCA_OK)
          return die(rc, "stats");
        std::printf(
            "%s scores: MACS=%.4f MACL=%.4f RSS=%.4f TotQR=%.4f TotT=%.4f "
            "TotPT=%.4f\n",
            corrected ? "corrected" : "naive", s.macs, s.macl, s.rss,
            s.tot_qr, s.tot_t, s.tot_pt);
      }
    }
    return 0;
  }

  if (*run) {
    spca_status rc = spca_run_experiment_file(run_cfg.c_str());
    if (rc != SPCA_OK) return die(rc, "run");
    return 0;
  }

  if (*rep) {
    spca_status rc = spca_reproduce(rep_which.c_str(), rep_dir.c_str(),
                                    rep_reps, rep_seed);
    if (rc != SPCA_OK) return die(rc, "reproduce");
    std::printf("wrote artifacts to %s\n", rep_dir.c_str());
    return 0;
  }

  return 0;
}
