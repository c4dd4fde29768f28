#include "quditforge.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/catalog.hpp"
#include "core/distinguishability.hpp"
#include "core/errors.hpp"
#include "core/fock.hpp"
#include "core/herald.hpp"
#include "core/search.hpp"
#include "core/ztl.hpp"
#include "core/bell_eval.hpp"

struct qf_solution {
  qforge::EncodingSolution value;
};

struct qf_catalog {
  qforge::Catalog value;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
qf_status guarded(F&& fn) {
  try {
    fn();
    return QF_OK;
  } catch (const qforge::TooLargeError& e) {
    g_last_error = e.what();
    return QF_ERR_TOO_LARGE;
  } catch (const qforge::NotFoundError& e) {
    g_last_error = e.what();
    return QF_ERR_NOT_FOUND;
  } catch (const qforge::NumericError& e) {
    g_last_error = e.what();
    return QF_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return QF_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QF_ERR_INTERNAL;
  }
}

qf_status require(bool condition, const char* message) {
  if (condition) return QF_OK;
  g_last_error = message;
  return QF_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

nlohmann::json solution_json(const qforge::EncodingSolution& s) {
  nlohmann::json j;
  j["n_qudits"] = s.n_qudits;
  j["dimension"] = s.dimension;
  j["n_modes"] = s.n_modes;
  j["encoding_modes"] = s.encoding_modes;
  j["branches"] = s.branches;
  j["qudit_registers"] = s.qudit_registers;
  return j;
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "quditforge 1.0.0"; }

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_string_free(char* text) { delete[] text; }
void qf_solution_free(qf_solution* solution) { delete solution; }
void qf_catalog_free(qf_catalog* catalog) { delete catalog; }

qf_status qf_solution_bell(int d, qf_solution** out) {
  if (auto rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] { *out = new qf_solution{qforge::bell_family_solution(d)}; });
}

qf_status qf_solution_analytic(int n_qudits, int dimension, qf_solution** out) {
  if (auto rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded(
      [&] { *out = new qf_solution{qforge::analytic_general_solution(n_qudits, dimension)}; });
}

qf_status qf_solution_from_modes(int n_qudits, int dimension, int n_modes,
                                 const int* modes, int modes_len, qf_solution** out) {
  if (auto rc = require(out && modes && modes_len > 0, "need modes and an output pointer"))
    return rc;
  return guarded([&] {
    std::vector<int> m(modes, modes + modes_len);
    *out = new qf_solution{qforge::make_solution(m, n_qudits, dimension, n_modes)};
  });
}

qf_status qf_search_brute(int n_qudits, int dimension, int m_start, int exhaustive,
                          long long random_budget, uint64_t seed, int threads,
                          int* certified_minimal, qf_solution** out) {
  if (auto rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    qforge::SearchConfig config;
    config.mode = exhaustive ? qforge::SearchConfig::Mode::Exhaustive
                             : qforge::SearchConfig::Mode::Random;
    config.m_start = m_start;
    config.random_subset_budget = random_budget;
    config.seed = seed;
    config.threads = threads;
    auto result = qforge::brute_force_min_m(n_qudits, dimension, config);
    if (certified_minimal) *certified_minimal = result.certified_minimal ? 1 : 0;
    *out = new qf_solution{std::move(result.witness)};
  });
}

qf_status qf_search_dsi(int n_qudits, int dimension, int m_max, int threads,
                        qf_solution** out) {
  if (auto rc = require(out != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    auto result = qforge::dsi_solve(n_qudits, dimension, m_max, threads);
    *out = new qf_solution{std::move(result.solution)};
  });
}

qf_status qf_solution_info(const qf_solution* solution, int* n_qudits, int* dimension,
                           int* n_modes) {
  if (auto rc = require(solution != nullptr, "null solution")) return rc;
  if (n_qudits) *n_qudits = solution->value.n_qudits;
  if (dimension) *dimension = solution->value.dimension;
  if (n_modes) *n_modes = solution->value.n_modes;
  return QF_OK;
}

qf_status qf_solution_modes(const qf_solution* solution, int* buffer, int buffer_len,
                            int* written) {
  if (auto rc = require(solution != nullptr, "null solution")) return rc;
  const auto& modes = solution->value.encoding_modes;
  if (written) *written = static_cast<int>(modes.size());
  if (buffer) {
    int n = std::min<int>(buffer_len, static_cast<int>(modes.size()));
    std::memcpy(buffer, modes.data(), sizeof(int) * n);
  }
  return QF_OK;
}

qf_status qf_solution_to_json(const qf_solution* solution, char** json_out) {
  if (auto rc = require(solution && json_out, "null argument")) return rc;
  return guarded([&] { *json_out = dup_string(solution_json(solution->value).dump(2)); });
}

qf_status qf_check_modes(int n_qudits, int dimension, int n_modes, const int* modes,
                         int modes_len, int* valid, char** report_json) {
  if (auto rc = require(modes && modes_len > 0, "need a mode list")) return rc;
  return guarded([&] {
    std::vector<int> m(modes, modes + modes_len);
    auto report = qforge::check_ghz_conditions(m, n_qudits, dimension, n_modes);
    if (valid) *valid = report.valid() ? 1 : 0;
    if (report_json) {
      nlohmann::json j;
      j["condition1"] = report.condition1;
      j["condition2"] = report.condition2;
      j["condition3"] = report.condition3;
      j["violations"] = report.violations;
      j["derived_registers"] = report.derived_registers;
      *report_json = dup_string(j.dump(2));
    }
  });
}

qf_status qf_single_pattern_prob(int n_qudits, int dimension, int n_modes,
                                 double* probability, double* log_probability) {
  return guarded([&] {
    auto p = qforge::success_prob_single_pattern(n_qudits, dimension, n_modes);
    if (probability) *probability = p.value;
    if (log_probability) *log_probability = p.log_value;
  });
}

qf_status qf_bell_closed_form(int d, double* probability) {
  if (auto rc = require(probability != nullptr, "null output pointer")) return rc;
  return guarded([&] { *probability = qforge::bell_success_closed_form(d); });
}

qf_status qf_count_heralding_patterns(const qf_solution* solution, char** count_out) {
  if (auto rc = require(solution && count_out, "null argument")) return rc;
  return guarded([&] {
    const auto& s = solution->value;
    auto count = qforge::count_constrained_multisets(
        s.heralding_modes(), s.n_modes - s.n_qudits, s.n_modes, 0);
    *count_out = dup_string(count.str());
  });
}

qf_status qf_boost_mc(const qf_solution* solution, long long n_samples, uint64_t seed,
                      int threads, qf_boost_result* out) {
  if (auto rc = require(solution && out, "null argument")) return rc;
  return guarded([&] {
    auto est = qforge::boosted_success_estimate(solution->value, n_samples, seed, threads);
    out->p_hat = est.p_hat;
    out->std_err = est.std_err;
    out->n_samples = est.n_samples;
    out->n_valid_heralds = est.n_valid_heralds;
    out->n_accepted = est.n_accepted;
    out->seed = est.seed;
  });
}

qf_status qf_boost_exact(const qf_solution* solution, long long guard, int threads,
                         double* probability) {
  if (auto rc = require(solution && probability, "null argument")) return rc;
  return guarded([&] {
    *probability = qforge::exhaustive_boosted_success(
        solution->value, guard > 0 ? static_cast<std::uint64_t>(guard) : 2'000'000, threads);
  });
}

qf_status qf_bell_breakdown(const char* circuit, int d, qf_bell_row* out) {
  if (auto rc = require(circuit && out, "null argument")) return rc;
  return guarded([&] {
    std::string name(circuit);
    qforge::HeraldedCircuit hc;
    double closed = std::nan("");
    if (name == "ztl") {
      hc = qforge::ztl_bell_circuit(d);
      closed = qforge::bell_success_closed_form(d);
    } else if (name == "v2a") {
      hc = qforge::experimental_bell_circuit_v2(d, qforge::HadamardVariant::A);
    } else if (name == "v2b") {
      hc = qforge::experimental_bell_circuit_v2(d, qforge::HadamardVariant::B);
    } else if (name == "v2c") {
      hc = qforge::experimental_bell_circuit_v2(d, qforge::HadamardVariant::C);
    } else if (name == "v3") {
      hc = qforge::experimental_bell_circuit_v3(d);
    } else {
      throw std::invalid_argument("unknown circuit '" + name + "'");
    }
    auto states = qforge::enumerate_conditional_states(hc);
    auto breakdown = qforge::classify_bell_success(states, d, hc);
    out->p_fixed = breakdown.p_f;
    out->p_arbitrary = breakdown.p_a;
    out->p_corrected = breakdown.p_c;
    out->closed_form = closed;
  });
}

qf_status qf_distinguishability_point(int d, double indistinguishability, int threads,
                                      double* fidelity, double* log_negativity) {
  return guarded([&] {
    auto point = qforge::distinguishability_point(d, indistinguishability, threads);
    if (fidelity) *fidelity = point.fidelity;
    if (log_negativity) *log_negativity = point.log_negativity;
  });
}

qf_status qf_rate(double rep_rate_hz, double p_success, double eta_source,
                  double eta_circuit, double eta_detector, int photons, double* rate) {
  if (auto rc = require(rate != nullptr, "null output pointer")) return rc;
  return guarded([&] {
    *rate = qforge::rate_calculator(rep_rate_hz, p_success, eta_source, eta_circuit,
                                    eta_detector, photons);
  });
}

qf_status qf_fit_power_law(const double* xs, const double* ys, int count, double* alpha,
                           double* beta, double* gamma, double* residual) {
  if (auto rc = require(xs && ys && count > 0, "need data points")) return rc;
  return guarded([&] {
    std::vector<std::pair<double, double>> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i) points.emplace_back(xs[i], ys[i]);
    auto fit = qforge::fit_power_law(points);
    if (alpha) *alpha = fit.alpha;
    if (beta) *beta = fit.beta;
    if (gamma) *gamma = fit.gamma;
    if (residual) *residual = fit.residual;
  });
}

qf_status qf_catalog_new(qf_catalog** out) {
  if (auto rc = require(out != nullptr, "null output pointer")) return rc;
  *out = new qf_catalog{};
  return QF_OK;
}

qf_status qf_catalog_load(const char* path, int force, qf_catalog** out) {
  if (auto rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    auto catalog = qforge::load_catalog(path, force != 0);
    *out = new qf_catalog{std::move(catalog)};
  });
}

qf_status qf_catalog_save(const qf_catalog* catalog, const char* path) {
  if (auto rc = require(catalog && path, "null argument")) return rc;
  return guarded([&] { qforge::save_catalog(catalog->value, path); });
}

qf_status qf_catalog_size(const qf_catalog* catalog, int* count) {
  if (auto rc = require(catalog && count, "null argument")) return rc;
  *count = static_cast<int>(catalog->value.entries.size());
  return QF_OK;
}

qf_status qf_catalog_add(qf_catalog* catalog, const qf_solution* solution,
                         const char* source, const uint64_t* seed_ptr, int* index_out) {
  if (auto rc = require(catalog && solution && source, "null argument")) return rc;
  return guarded([&] {
    qforge::CatalogEntry entry;
    entry.solution = solution->value;
    entry.source = source;
    if (seed_ptr) entry.seed = *seed_ptr;
    entry.timestamp = qforge::iso8601_utc_now();
    entry.verified = true;
    catalog->value.entries.push_back(std::move(entry));
    if (index_out) *index_out = static_cast<int>(catalog->value.entries.size()) - 1;
  });
}

qf_status qf_catalog_get_solution(const qf_catalog* catalog, int index, qf_solution** out) {
  if (auto rc = require(catalog && out, "null argument")) return rc;
  if (auto rc = require(index >= 0 && index < static_cast<int>(catalog->value.entries.size()),
                        "catalog index out of range"))
    return rc;
  *out = new qf_solution{catalog->value.entries[index].solution};
  return QF_OK;
}

qf_status qf_catalog_entry_json(const qf_catalog* catalog, int index, char** json_out) {
  if (auto rc = require(catalog && json_out, "null argument")) return rc;
  if (auto rc = require(index >= 0 && index < static_cast<int>(catalog->value.entries.size()),
                        "catalog index out of range"))
    return rc;
  return guarded([&] {
    const auto& entry = catalog->value.entries[index];
    nlohmann::json j = solution_json(entry.solution);
    j["source"] = entry.source;
    j["verified"] = entry.verified;
    j["timestamp"] = entry.timestamp;
    if (entry.seed) j["seed"] = *entry.seed;
    if (entry.p_single) j["p_single"] = *entry.p_single;
    if (entry.p_boosted) {
      j["p_boosted"] = {{"value", entry.p_boosted->p_hat},
                        {"stderr", entry.p_boosted->std_err},
                        {"samples", entry.p_boosted->n_samples},
                        {"seed", entry.p_boosted->seed}};
    }
    *json_out = dup_string(j.dump(2));
  });
}

qf_status qf_catalog_set_p_single(qf_catalog* catalog, int index, double p_single) {
  if (auto rc = require(catalog != nullptr, "null catalog")) return rc;
  if (auto rc = require(index >= 0 && index < static_cast<int>(catalog->value.entries.size()),
                        "catalog index out of range"))
    return rc;
  catalog->value.entries[index].p_single = p_single;
  return QF_OK;
}

qf_status qf_catalog_set_boost(qf_catalog* catalog, int index, const qf_boost_result* boost) {
  if (auto rc = require(catalog && boost, "null argument")) return rc;
  if (auto rc = require(index >= 0 && index < static_cast<int>(catalog->value.entries.size()),
                        "catalog index out of range"))
    return rc;
  qforge::BoostedEstimate est;
  est.p_hat = boost->p_hat;
  est.std_err = boost->std_err;
  est.n_samples = boost->n_samples;
  est.n_valid_heralds = boost->n_valid_heralds;
  est.n_accepted = boost->n_accepted;
  est.seed = boost->seed;
  catalog->value.entries[index].p_boosted = est;
  return QF_OK;
}

}  // extern "C"
