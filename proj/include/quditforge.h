/* quditforge - heralded high-dimensional entanglement schemes on DFT
 * interferometers: solution search, exact simulation, Monte Carlo boosting,
 * and distinguishability analysis.
 *
 * C interface over the C++ core. All functions return qf_status; outputs are
 * written through pointers. Objects returned through qf_solution/qf_catalog
 * handles must be released with the matching _free call; strings returned
 * through char** must be released with qf_string_free.
 */

#ifndef QUDITFORGE_H
#define QUDITFORGE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
  QF_OK = 0,
  QF_ERR_INVALID_ARGUMENT = 1,
  QF_ERR_TOO_LARGE = 2,
  QF_ERR_NOT_FOUND = 3,
  QF_ERR_NUMERIC = 4,
  QF_ERR_IO = 5,
  QF_ERR_VERIFICATION = 6,
  QF_ERR_INTERNAL = 7
} qf_status;

typedef struct qf_solution qf_solution;
typedef struct qf_catalog qf_catalog;

typedef struct qf_boost_result {
  double p_hat;
  double std_err;
  long long n_samples;
  long long n_valid_heralds;
  long long n_accepted;
  uint64_t seed;
} qf_boost_result;

typedef struct qf_bell_row {
  double p_fixed;
  double p_arbitrary;
  double p_corrected;
  double closed_form; /* NaN for circuits without a closed form */
} qf_bell_row;

const char* qf_version(void);

/* Message for the most recent failure on this thread. */
const char* qf_last_error(void);

void qf_string_free(char* text);
void qf_solution_free(qf_solution* solution);
void qf_catalog_free(qf_catalog* catalog);

/* --- solutions ---------------------------------------------------------- */

qf_status qf_solution_bell(int d, qf_solution** out);
qf_status qf_solution_analytic(int n_qudits, int dimension, qf_solution** out);
qf_status qf_solution_from_modes(int n_qudits, int dimension, int n_modes,
                                 const int* modes, int n_modes_len, qf_solution** out);

qf_status qf_search_brute(int n_qudits, int dimension, int m_start, int exhaustive,
                          long long random_budget, uint64_t seed, int threads,
                          int* certified_minimal, qf_solution** out);
qf_status qf_search_dsi(int n_qudits, int dimension, int m_max, int threads,
                        qf_solution** out);

qf_status qf_solution_info(const qf_solution* solution, int* n_qudits, int* dimension,
                           int* n_modes);
/* Copies up to buffer_len mode indices; *written receives the full count. */
qf_status qf_solution_modes(const qf_solution* solution, int* buffer, int buffer_len,
                            int* written);
qf_status qf_solution_to_json(const qf_solution* solution, char** json_out);

/* Detailed condition report for an arbitrary mode set (JSON). */
qf_status qf_check_modes(int n_qudits, int dimension, int n_modes, const int* modes,
                         int modes_len, int* valid, char** report_json);

/* --- probabilities ------------------------------------------------------ */

qf_status qf_single_pattern_prob(int n_qudits, int dimension, int n_modes,
                                 double* probability, double* log_probability);
qf_status qf_bell_closed_form(int d, double* probability);

/* Exact count of valid heralding patterns, as a decimal string. */
qf_status qf_count_heralding_patterns(const qf_solution* solution, char** count_out);

qf_status qf_boost_mc(const qf_solution* solution, long long n_samples, uint64_t seed,
                      int threads, qf_boost_result* out);
qf_status qf_boost_exact(const qf_solution* solution, long long guard, int threads,
                         double* probability);

/* circuit: "ztl", "v2a", "v2b", "v2c", "v3" (non-ztl are experimental). */
qf_status qf_bell_breakdown(const char* circuit, int d, qf_bell_row* out);

qf_status qf_distinguishability_point(int d, double indistinguishability, int threads,
                                      double* fidelity, double* log_negativity);

qf_status qf_rate(double rep_rate_hz, double p_success, double eta_source,
                  double eta_circuit, double eta_detector, int photons, double* rate);

qf_status qf_fit_power_law(const double* xs, const double* ys, int count, double* alpha,
                           double* beta, double* gamma, double* residual);

/* --- catalog ------------------------------------------------------------ */

qf_status qf_catalog_new(qf_catalog** out);
qf_status qf_catalog_load(const char* path, int force, qf_catalog** out);
qf_status qf_catalog_save(const qf_catalog* catalog, const char* path);
qf_status qf_catalog_size(const qf_catalog* catalog, int* count);
/* seed_ptr may be NULL for deterministic sources. Returns the entry index. */
qf_status qf_catalog_add(qf_catalog* catalog, const qf_solution* solution,
                         const char* source, const uint64_t* seed_ptr, int* index_out);
qf_status qf_catalog_get_solution(const qf_catalog* catalog, int index, qf_solution** out);
qf_status qf_catalog_entry_json(const qf_catalog* catalog, int index, char** json_out);
qf_status qf_catalog_set_p_single(qf_catalog* catalog, int index, double p_single);
qf_status qf_catalog_set_boost(qf_catalog* catalog, int index, const qf_boost_result* boost);

#ifdef __cplusplus
}
#endif

#endif /* QUDITFORGE_H */
