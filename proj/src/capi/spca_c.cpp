#include "spca/spca.h"

#include <cstring>
#include <string>

#include "../core/diagnostics.hpp"
#include "../core/errors.hpp"
#include "../core/experiment.hpp"
#include "../core/io.hpp"
#include "../core/model.hpp"
#include "../core/simgen.hpp"

// Opaque handle definitions: thin wrappers around the core types.
struct spca_matrix {
  spca::Matrix m;
};
struct spca_dataset {
  spca::SimulatedDataset d;
  spca_matrix x_view, t_view, p_view;
};
struct spca_model {
  spca::FactorModel fm;
  spca_matrix t_view, p_view;
};

namespace {

thread_local std::string g_last_error;

spca_status fail(spca_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps core exceptions onto C error codes.
template <typename Fn>
spca_status guarded(Fn&& fn) {
  try {
    fn();
    return SPCA_OK;
  } catch (const spca::DegenerateComponent& e) {
    return fail(SPCA_ERR_DEGENERATE_COMPONENT, e.what());
  } catch (const spca::RankExhausted& e) {
    return fail(SPCA_ERR_RANK_EXHAUSTED, e.what());
  } catch (const spca::ShapeError& e) {
    return fail(SPCA_ERR_SHAPE, e.what());
  } catch (const spca::ParseError& e) {
    return fail(SPCA_ERR_PARSE, e.what());
  } catch (const spca::MissingData& e) {
    return fail(SPCA_ERR_MISSING_DATA, e.what());
  } catch (const spca::InvalidInput& e) {
    return fail(SPCA_ERR_INVALID_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(SPCA_ERR_UNKNOWN, e.what());
  }
}

spca::Method to_core(spca_method m) {
  switch (m) {
    case SPCA_METHOD_PCA: return spca::Method::kPca;
    case SPCA_METHOD_SPCA: return spca::Method::kSpca;
    case SPCA_METHOD_SPCA_SQ: return spca::Method::kSpcaSeq;
    case SPCA_METHOD_PMD_PD: return spca::Method::kPmdPd;
    case SPCA_METHOD_PMD_O: return spca::Method::kPmdO;
    case SPCA_METHOD_PMD_M: return spca::Method::kPmdM;
    case SPCA_METHOD_GPCA_PD: return spca::Method::kGpcaPd;
    case SPCA_METHOD_GPCA_M: return spca::Method::kGpcaM;
    case SPCA_METHOD_GPCA_O: return spca::Method::kGpcaO;
  }
  throw spca::InvalidInput("unknown method id");
}

spca_dataset* wrap_dataset(spca::SimulatedDataset d) {
  auto* out = new spca_dataset{std::move(d), {}, {}, {}};
  out->x_view.m = out->d.X;
  out->t_view.m = out->d.T_true;
  out->p_view.m = out->d.P_true;
  return out;
}

}  // namespace

extern "C" {

const char* spca_last_error(void) { return g_last_error.c_str(); }

spca_status spca_matrix_create(size_t rows, size_t cols,
                               const double* row_major, spca_matrix** out) {
  if (!row_major || !out)
    return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    std::vector<double> data(row_major, row_major + rows * cols);
    *out = new spca_matrix{spca::Matrix(rows, cols, std::move(data))};
  });
}

spca_status spca_matrix_load_csv(const char* path, spca_matrix** out) {
  if (!path || !out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] { *out = new spca_matrix{spca::load_matrix_csv(path)}; });
}

spca_status spca_matrix_save_csv(const spca_matrix* m, const char* path) {
  if (!m || !path) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] { spca::save_matrix_csv(m->m, path); });
}

size_t spca_matrix_rows(const spca_matrix* m) { return m ? m->m.rows() : 0; }
size_t spca_matrix_cols(const spca_matrix* m) { return m ? m->m.cols() : 0; }

spca_status spca_matrix_copy_data(const spca_matrix* m, double* out,
                                  size_t capacity) {
  if (!m || !out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  const size_t need = m->m.rows() * m->m.cols();
  if (capacity < need)
    return fail(SPCA_ERR_SHAPE, "output buffer too small");
  std::memcpy(out, m->m.data().data(), need * sizeof(double));
  return SPCA_OK;
}

void spca_matrix_free(spca_matrix* m) { delete m; }

spca_status spca_gen_orthogonal_spectra(spca_dataset** out) {
  if (!out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] { *out = wrap_dataset(spca::gen_orthogonal_spectra()); });
}

spca_status spca_gen_nonorthogonal_spectra(spca_dataset** out) {
  if (!out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded(
      [&] { *out = wrap_dataset(spca::gen_nonorthogonal_spectra()); });
}

spca_status spca_gen_montecarlo(uint64_t seed, spca_dataset** out) {
  if (!out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] { *out = wrap_dataset(spca::gen_montecarlo(seed)); });
}

const spca_matrix* spca_dataset_x(const spca_dataset* d) {
  return d ? &d->x_view : nullptr;
}
const spca_matrix* spca_dataset_scores(const spca_dataset* d) {
  return d ? &d->t_view : nullptr;
}
const spca_matrix* spca_dataset_loadings(const spca_dataset* d) {
  return d ? &d->p_view : nullptr;
}
size_t spca_dataset_nnz(const spca_dataset* d) {
  return d ? d->d.nnz_true : 0;
}
void spca_dataset_free(spca_dataset* d) { delete d; }

spca_status spca_fit(const spca_matrix* x, spca_method method, size_t ncomp,
                     double knob, spca_model** out) {
  if (!x || !out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    auto* m = new spca_model{
        spca::fit_method(to_core(method), x->m, ncomp, knob), {}, {}};
    m->t_view.m = m->fm.T;
    m->p_view.m = m->fm.P;
    *out = m;
  });
}

spca_status spca_calibrate(const spca_matrix* x, spca_method method,
                           size_t ncomp, size_t target_nnz, double* knob,
                           size_t* achieved_nnz, int* warning) {
  if (!x || !knob) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    spca::Calibration c =
        spca::calibrate_sparsity(to_core(method), x->m, target_nnz, ncomp);
    *knob = c.knob;
    if (achieved_nnz) *achieved_nnz = c.achieved_nnz;
    if (warning) *warning = c.warning ? 1 : 0;
  });
}

const spca_matrix* spca_model_loadings(const spca_model* m) {
  return m ? &m->p_view : nullptr;
}
const spca_matrix* spca_model_scores(const spca_model* m) {
  return m ? &m->t_view : nullptr;
}
size_t spca_model_nnz(const spca_model* m) {
  return m ? spca::count_nonzeros(m->fm.P) : 0;
}

spca_status spca_model_corrected_scores(const spca_model* m,
                                        const spca_matrix* x,
                                        spca_matrix** out) {
  if (!m || !x || !out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    *out = new spca_matrix{spca::corrected_scores(x->m, m->fm.P)};
  });
}

void spca_model_free(spca_model* m) { delete m; }

spca_status spca_model_stats(const spca_model* m, const spca_matrix* x,
                             int corrected, spca_stats* out) {
  if (!m || !x || !out) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    spca::StatsReport s = spca::compute_stats(
        x->m, m->fm,
        corrected ? spca::ScoreMode::kCorrected : spca::ScoreMode::kNaive);
    *out = {s.macs, s.macl, s.rss, s.tot_qr, s.tot_t, s.tot_pt};
  });
}

spca_status spca_run_experiment_file(const char* config_path) {
  if (!config_path) return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    spca::run_and_emit(spca::parse_config_file(config_path));
  });
}

spca_status spca_reproduce(const char* which, const char* output_dir,
                           size_t repetitions, uint64_t seed) {
  if (!which || !output_dir)
    return fail(SPCA_ERR_INVALID_INPUT, "null argument");
  return guarded([&] {
    const std::string w = which;
    spca::ExperimentConfig cfg;
    cfg.output_dir = output_dir;
    if (w == "table1" || w == "table2") {
      cfg.experiment = spca::ExperimentKind::kNonorthogonal;
    } else if (w == "montecarlo") {
      cfg.experiment = spca::ExperimentKind::kMontecarlo;
      cfg.repetitions = repetitions ? repetitions : 100;
      cfg.seed = seed ? seed : 1;
    } else {
      throw spca::InvalidInput("unknown reproduction target: " + w);
    }
    spca::run_and_emit(cfg);
  });
}

}  // extern "C"
