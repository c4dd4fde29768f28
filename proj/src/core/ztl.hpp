#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/fock.hpp"
#include "core/unitary.hpp"

namespace qforge {

inline constexpr std::uint64_t kDefaultBranchGuard = 20'000'000;

// Suppression rule for an m-mode DFT fed with one photon per input: an output
// configuration can have non-zero amplitude only if its mode indices sum to a
// multiple of m.
bool ztl_allowed(const PhotonConfiguration& config, int m);

// One heralded generation scheme: N qudits of dimension d carried by the
// encoding modes of an m-mode DFT, with the branch set and per-qudit mode
// registers derived from it.
struct EncodingSolution {
  int n_qudits = 0;
  int dimension = 0;
  int n_modes = 0;
  std::vector<int> encoding_modes;                // sorted, 0 excluded
  std::vector<std::vector<int>> branches;         // lexicographic, tuples non-decreasing
  std::vector<std::vector<int>> qudit_registers;  // register i, level k -> mode

  std::vector<int> heralding_modes() const;  // complement of encoding_modes
};

struct SolutionReport {
  bool condition1 = false;  // exactly d branches
  bool condition2 = false;  // branches partition the encoding modes
  bool condition3 = false;  // every branch sums to exactly m
  std::vector<std::string> violations;
  std::vector<std::vector<int>> derived_registers;

  bool valid() const { return condition1 && condition2 && condition3; }
};

// All N-element multisets over `modes` (repetition allowed, tuples emitted in
// non-decreasing order, lexicographic overall) whose sum is 0 mod m. Throws
// TooLargeError when the pruned search visits more than `guard` nodes. If
// max_branches >= 0, stops early once more than that many branches exist.
std::vector<std::vector<int>> build_branch_set(const std::vector<int>& modes,
                                               int n_qudits, int m,
                                               std::uint64_t guard = kDefaultBranchGuard,
                                               int max_branches = -1);

SolutionReport check_ghz_conditions(const std::vector<int>& modes, int n_qudits,
                                    int dimension, int m);

// Builds a verified EncodingSolution from a candidate mode set; throws
// std::invalid_argument when the conditions fail.
EncodingSolution make_solution(const std::vector<int>& modes, int n_qudits,
                               int dimension, int m);

// A target superposition of computational-basis terms with optional
// positive amplitudes (uniform when omitted).
struct TargetStructure {
  int n_qudits = 0;
  int dimension = 0;
  std::vector<std::vector<int>> terms;
  std::vector<double> amplitudes;  // empty = uniform
};

// Checks that the branch set of (modes, m) maps bijectively, through the
// given registers, onto the target terms. Registers must partition the mode
// set into N lists of d; levels never used by the target may sit on modes
// that appear in no branch.
SolutionReport check_target_structure(const std::vector<int>& modes, int m,
                                      const TargetStructure& target,
                                      const std::vector<std::vector<int>>& registers);

struct LogProbability {
  double value = 0.0;
  double log_value = 0.0;  // natural log
};

// Closed-form branch amplitude (-1)^(N-1) (N-1)! sqrt((m-N)!/m^(m-2)),
// evaluated in log space.
Complex ghz_amplitude_closed_form(int n_qudits, int m);

// d ((N-1)!)^2 (m-N)!/m^(m-2), in log space.
LogProbability success_prob_single_pattern(int n_qudits, int dimension, int m);

// The m = 2d+1 family for qudit Bell pairs.
EncodingSolution bell_family_solution(int d);
double bell_success_closed_form(int d);

// General closed-form solution for any (N, d); m = (N^(Nd)-1)/(N^d-1).
// Throws TooLargeError if m does not fit the mode-index range.
EncodingSolution analytic_general_solution(int n_qudits, int dimension);

struct ProcrusteanSchedule {
  double success = 0.0;
  std::vector<double> transmissions;  // per-level amplitude transmission
  bool degenerate = false;            // some amplitude was zero
};

// Heralded filtering that equalizes branch amplitudes; succeeds with
// probability d min_k |a_k|^2.
ProcrusteanSchedule procrustean(const std::vector<Complex>& amplitudes, int d);

}  // namespace qforge
