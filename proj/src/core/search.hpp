#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/ztl.hpp"

namespace qforge {

struct SearchConfig {
  enum class Mode { Exhaustive, Random };
  Mode mode = Mode::Exhaustive;
  int m_start = 40;
  long long random_subset_budget = 10000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct BruteForceResult {
  int m_bar = 0;
  EncodingSolution witness;
  bool certified_minimal = false;  // exhaustive refutation at m_bar - 1
  long long subsets_tested = 0;
};

// Descends m from config.m_start, testing size-N*d subsets of {1..m-1} against
// the GHZ conditions (all subsets in exhaustive mode, budgeted random draws
// otherwise), and returns the smallest m that still admits a solution. The
// witness is the colexicographically first valid subset at that m, independent
// of the worker count.
BruteForceResult brute_force_min_m(int n_qudits, int dimension, const SearchConfig& config);

// All valid mode sets at a fixed m (exhaustive mode), or those hit within the
// random budget; sorted colexicographically. first_only stops each worker at
// its first hit, still returning the global colex-first witness.
std::vector<std::vector<int>> find_witnesses_at_m(int n_qudits, int dimension, int m,
                                                  const SearchConfig& config,
                                                  bool first_only = false);

struct DsiResult {
  int m = 0;
  EncodingSolution solution;
  std::vector<int> stage1_set;
};

// Different-Sums Iterative solver. Stage 1 grows a set of (N-1)*d integers by
// repeatedly appending the smallest value that keeps every (N-1)-element sum
// (with repetition) distinct from sums of the existing elements; stage 2 scans
// m upward and completes each d-block partition of the stage-1 set, returning
// the first completion that passes the GHZ checker.
DsiResult dsi_solve(int n_qudits, int dimension, int m_max, int threads = 0);

std::vector<int> dsi_stage1(int n_qudits, int dimension);

struct PowerLawFit {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;  // root-mean-square
};

// Least-squares fit of m = gamma + beta * d^alpha by Levenberg-Marquardt with
// deterministic initialization (alpha = 2, beta from endpoints, gamma = 0).
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

}  // namespace qforge
