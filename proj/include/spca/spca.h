/* C API for the sparse-PCA core library.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return SPCA_OK on success; on failure they return an error
 * code and spca_last_error() describes the failure (thread-local).
 */
#ifndef SPCA_SPCA_H
#define SPCA_SPCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SPCA_API __declspec(dllexport)
#else
#define SPCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct spca_matrix spca_matrix;
typedef struct spca_dataset spca_dataset;
typedef struct spca_model spca_model;

typedef enum spca_status {
  SPCA_OK = 0,
  SPCA_ERR_INVALID_INPUT = 1,
  SPCA_ERR_SHAPE = 2,
  SPCA_ERR_DEGENERATE_COMPONENT = 3,
  SPCA_ERR_RANK_EXHAUSTED = 4,
  SPCA_ERR_PARSE = 5,
  SPCA_ERR_MISSING_DATA = 6,
  SPCA_ERR_UNKNOWN = 99
} spca_status;

typedef enum spca_method {
  SPCA_METHOD_PCA = 0,
  SPCA_METHOD_SPCA = 1,
  SPCA_METHOD_SPCA_SQ = 2,
  SPCA_METHOD_PMD_PD = 3,
  SPCA_METHOD_PMD_O = 4,
  SPCA_METHOD_PMD_M = 5,
  SPCA_METHOD_GPCA_PD = 6,
  SPCA_METHOD_GPCA_M = 7,
  SPCA_METHOD_GPCA_O = 8
} spca_method;

/* Message for the most recent failure on this thread. */
SPCA_API const char* spca_last_error(void);

/* ---- matrices ---- */

SPCA_API spca_status spca_matrix_create(size_t rows, size_t cols,
                                        const double* row_major,
                                        spca_matrix** out);
SPCA_API spca_status spca_matrix_load_csv(const char* path,
                                          spca_matrix** out);
SPCA_API spca_status spca_matrix_save_csv(const spca_matrix* m,
                                          const char* path);
SPCA_API size_t spca_matrix_rows(const spca_matrix* m);
SPCA_API size_t spca_matrix_cols(const spca_matrix* m);
/* Copies the matrix into caller-owned storage, row-major. */
SPCA_API spca_status spca_matrix_copy_data(const spca_matrix* m,
                                           double* out, size_t capacity);
SPCA_API void spca_matrix_free(spca_matrix* m);

/* ---- simulated datasets ---- */

SPCA_API spca_status spca_gen_orthogonal_spectra(spca_dataset** out);
SPCA_API spca_status spca_gen_nonorthogonal_spectra(spca_dataset** out);
SPCA_API spca_status spca_gen_montecarlo(uint64_t seed, spca_dataset** out);
/* Borrowed views; valid while the dataset handle lives. */
SPCA_API const spca_matrix* spca_dataset_x(const spca_dataset* d);
SPCA_API const spca_matrix* spca_dataset_scores(const spca_dataset* d);
SPCA_API const spca_matrix* spca_dataset_loadings(const spca_dataset* d);
SPCA_API size_t spca_dataset_nnz(const spca_dataset* d);
SPCA_API void spca_dataset_free(spca_dataset* d);

/* ---- fitting ---- */

/* knob: lambda1 for SPCA variants, c2 for PMD variants, gamma for GPCA
 * variants; ignored for PCA. Pass a value from spca_calibrate (or your
 * own) — there is no automatic calibration inside spca_fit. */
SPCA_API spca_status spca_fit(const spca_matrix* x, spca_method method,
                              size_t ncomp, double knob, spca_model** out);

/* Bisection on the method's sparsity knob toward target_nnz. warning is
 * set nonzero when the sampled knob/nnz relation was not monotone. */
SPCA_API spca_status spca_calibrate(const spca_matrix* x, spca_method method,
                                    size_t ncomp, size_t target_nnz,
                                    double* knob, size_t* achieved_nnz,
                                    int* warning);

SPCA_API const spca_matrix* spca_model_loadings(const spca_model* m);
/* The method's native per-component scores. */
SPCA_API const spca_matrix* spca_model_scores(const spca_model* m);
SPCA_API size_t spca_model_nnz(const spca_model* m);
/* Least-squares corrected scores; caller frees the result. */
SPCA_API spca_status spca_model_corrected_scores(const spca_model* m,
                                                 const spca_matrix* x,
                                                 spca_matrix** out);
SPCA_API void spca_model_free(spca_model* m);

/* ---- statistics ---- */

typedef struct spca_stats {
  double macs;
  double macl;
  double rss;
  double tot_qr;
  double tot_t;
  double tot_pt;
} spca_stats;

/* corrected = 0: the model's native scores; nonzero: corrected scores. */
SPCA_API spca_status spca_model_stats(const spca_model* m,
                                      const spca_matrix* x, int corrected,
                                      spca_stats* out);

/* ---- experiment runner ---- */

/* Runs the experiment described by a key-value config file and writes
 * run_report.json (plus tables/box-plot CSVs where applicable) into the
 * configured output directory. */
SPCA_API spca_status spca_run_experiment_file(const char* config_path);

/* Reproduction presets: which = "table1", "table2" or "montecarlo".
 * repetitions and seed apply to "montecarlo" (pass 0 for defaults). */
SPCA_API spca_status spca_reproduce(const char* which,
                                    const char* output_dir,
                                    size_t repetitions, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* SPCA_SPCA_H */
