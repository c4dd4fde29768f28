#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/herald.hpp"
#include "core/ztl.hpp"

namespace qforge {

struct CatalogEntry {
  EncodingSolution solution;
  std::string source;  // dsi | brute | analytic | manual
  std::optional<std::uint64_t> seed;
  std::string timestamp;  // ISO 8601 UTC
  bool verified = false;
  std::optional<double> p_single;
  std::optional<BoostedEstimate> p_boosted;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
};

std::string catalog_to_json(const Catalog& catalog);

// Parses and re-verifies every entry against the GHZ checker. Entries that
// fail re-verification are rejected unless force is set (they load with
// verified = false).
Catalog catalog_from_json(const std::string& text, bool force);

void save_catalog(const Catalog& catalog, const std::string& path);
Catalog load_catalog(const std::string& path, bool force);

std::string iso8601_utc_now();

// Heralded event rate: rep_rate * p_success * (eta_source eta_circuit eta_detector)^photons.
double rate_calculator(double rep_rate_hz, double p_success, double eta_source,
                       double eta_circuit, double eta_detector, int photons);

}  // namespace qforge
