#include "core/catalog.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qforge {

using nlohmann::json;

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string catalog_to_json(const Catalog& catalog) {
  json root;
  root["version"] = 1;
  root["entries"] = json::array();
  for (const auto& entry : catalog.entries) {
    json e;
    e["n_qudits"] = entry.solution.n_qudits;
    e["dimension"] = entry.solution.dimension;
    e["n_modes"] = entry.solution.n_modes;
    e["encoding_modes"] = entry.solution.encoding_modes;
    e["branches"] = entry.solution.branches;
    e["qudit_registers"] = entry.solution.qudit_registers;
    e["source"] = entry.source;
    if (entry.seed) e["seed"] = *entry.seed;
    else e["seed"] = nullptr;
    e["timestamp"] = entry.timestamp;
    e["verified"] = entry.verified;
    if (entry.p_single) e["p_single"] = *entry.p_single;
    if (entry.p_boosted) {
      e["p_boosted"] = {{"value", entry.p_boosted->p_hat},
                        {"stderr", entry.p_boosted->std_err},
                        {"samples", entry.p_boosted->n_samples},
                        {"seed", entry.p_boosted->seed}};
    }
    root["entries"].push_back(std::move(e));
  }
  return root.dump(2) + "\n";
}

Catalog catalog_from_json(const std::string& text, bool force) {
  json root = json::parse(text);
  if (!root.contains("version") || root["version"].get<int>() != 1)
    throw std::invalid_argument("unsupported catalog version");
  Catalog catalog;
  for (const auto& e : root.at("entries")) {
    CatalogEntry entry;
    int n = e.at("n_qudits").get<int>();
    int d = e.at("dimension").get<int>();
    int m = e.at("n_modes").get<int>();
    auto modes = e.at("encoding_modes").get<std::vector<int>>();

    auto report = check_ghz_conditions(modes, n, d, m);
    if (!report.valid()) {
      if (!force) {
        std::string msg = "catalog entry failed re-verification:";
        for (const auto& v : report.violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
      }
      entry.solution.n_qudits = n;
      entry.solution.dimension = d;
      entry.solution.n_modes = m;
      entry.solution.encoding_modes = modes;
      if (e.contains("branches"))
        entry.solution.branches = e["branches"].get<std::vector<std::vector<int>>>();
      if (e.contains("qudit_registers"))
        entry.solution.qudit_registers =
            e["qudit_registers"].get<std::vector<std::vector<int>>>();
      entry.verified = false;
    } else {
      entry.solution = make_solution(modes, n, d, m);
      entry.verified = true;
    }

    entry.source = e.value("source", std::string("manual"));
    if (e.contains("seed") && !e["seed"].is_null())
      entry.seed = e["seed"].get<std::uint64_t>();
    entry.timestamp = e.value("timestamp", std::string());
    if (e.contains("p_single")) entry.p_single = e["p_single"].get<double>();
    if (e.contains("p_boosted") && !e["p_boosted"].is_null()) {
      BoostedEstimate b;
      b.p_hat = e["p_boosted"].at("value").get<double>();
      b.std_err = e["p_boosted"].at("stderr").get<double>();
      b.n_samples = e["p_boosted"].at("samples").get<long long>();
      if (e["p_boosted"].contains("seed")) b.seed = e["p_boosted"]["seed"].get<std::uint64_t>();
      entry.p_boosted = b;
    }
    catalog.entries.push_back(std::move(entry));
  }
  return catalog;
}

void save_catalog(const Catalog& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << catalog_to_json(catalog);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Catalog load_catalog(const std::string& path, bool force) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return catalog_from_json(buf.str(), force);
}

double rate_calculator(double rep_rate_hz, double p_success, double eta_source,
                       double eta_circuit, double eta_detector, int photons) {
  if (rep_rate_hz < 0 || p_success < 0 || photons < 0)
    throw std::invalid_argument("rates, probabilities and photon counts must be non-negative");
  for (double eta : {eta_source, eta_circuit, eta_detector})
    if (!(eta >= 0.0 && eta <= 1.0))
      throw std::invalid_argument("efficiencies must be in [0, 1]");
  return rep_rate_hz * p_success * std::pow(eta_source * eta_circuit * eta_detector, photons);
}

}  // namespace qforge
