#include "core/ztl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/errors.hpp"

namespace qforge {

bool ztl_allowed(const PhotonConfiguration& config, int m) {
  if (m < 1) throw std::invalid_argument("mode count must be positive");
  long long sum = std::accumulate(config.modes.begin(), config.modes.end(), 0LL);
  return sum % m == 0;
}

std::vector<int> EncodingSolution::heralding_modes() const {
  std::vector<bool> used(n_modes, false);
  for (int mode : encoding_modes) used[mode] = true;
  std::vector<int> out;
  for (int mode = 0; mode < n_modes; ++mode)
    if (!used[mode]) out.push_back(mode);
  return out;
}

namespace {

void validate_mode_set(const std::vector<int>& modes, int m) {
  for (int x : modes) {
    if (x < 1 || x >= m)
      throw std::invalid_argument("encoding modes must lie in 1..m-1");
  }
  std::vector<int> sorted(modes);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("encoding modes must be distinct");
}

struct BranchSearch {
  const std::vector<int>& modes;  // sorted ascending
  int n_qudits;
  int m;
  std::uint64_t guard;
  int max_branches;
  std::uint64_t visited = 0;
  std::vector<int> current;
  std::vector<std::vector<int>> found;

  bool recurse(std::size_t start, int slots, long long sum) {
    if (++visited > guard)
      throw TooLargeError("branch enumeration exceeded its guard");
    if (slots == 0) {
      if (sum % m == 0) {
        found.push_back(current);
        if (max_branches >= 0 && static_cast<int>(found.size()) > max_branches) return false;
      }
      return true;
    }
    for (std::size_t i = start; i < modes.size(); ++i) {
      long long lo = sum + static_cast<long long>(slots) * modes[i];
      long long hi = sum + static_cast<long long>(slots) * modes.back();
      // any multiple of m reachable from here?
      if ((lo + m - 1) / m * m > hi) break;
      current.push_back(modes[i]);
      bool keep_going = recurse(i, slots - 1, sum + modes[i]);
      current.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<std::vector<int>> build_branch_set(const std::vector<int>& modes,
                                               int n_qudits, int m,
                                               std::uint64_t guard, int max_branches) {
  if (n_qudits < 1) throw std::invalid_argument("need at least one qudit");
  validate_mode_set(modes, m);
  std::vector<int> sorted(modes);
  std::sort(sorted.begin(), sorted.end());
  BranchSearch search{sorted, n_qudits, m, guard, max_branches};
  search.current.reserve(n_qudits);
  search.recurse(0, n_qudits, 0);
  return std::move(search.found);
}

SolutionReport check_ghz_conditions(const std::vector<int>& modes, int n_qudits,
                                    int dimension, int m) {
  if (n_qudits < 2 || dimension < 2)
    throw std::invalid_argument("need N >= 2 and d >= 2");
  if (static_cast<int>(modes.size()) != n_qudits * dimension)
    throw std::invalid_argument("mode set size must equal N*d");
  validate_mode_set(modes, m);

  SolutionReport report;
  // Bounded enumeration: one extra branch already settles condition 1.
  auto branches = build_branch_set(modes, n_qudits, m, kDefaultBranchGuard, dimension);

  report.condition1 = static_cast<int>(branches.size()) == dimension;
  if (!report.condition1) {
    std::ostringstream msg;
    msg << "condition 1: found " << (static_cast<int>(branches.size()) > dimension ? "more than " : "")
        << branches.size() << " branches, expected " << dimension;
    report.violations.push_back(msg.str());
  }

  std::multiset<int> used;
  for (const auto& branch : branches) used.insert(branch.begin(), branch.end());
  std::set<int> mode_set(modes.begin(), modes.end());
  bool all_distinct = used.size() == std::set<int>(used.begin(), used.end()).size();
  bool covers = std::set<int>(used.begin(), used.end()) == mode_set;
  report.condition2 = report.condition1 && all_distinct && covers;
  if (!report.condition2) {
    if (!all_distinct)
      report.violations.push_back("condition 2: a mode repeats across or within branches");
    else if (!covers)
      report.violations.push_back("condition 2: branches do not cover the encoding modes");
    else
      report.violations.push_back("condition 2: implied by condition 1 failure");
  }

  report.condition3 = !branches.empty();
  for (const auto& branch : branches) {
    long long sum = std::accumulate(branch.begin(), branch.end(), 0LL);
    if (sum != m) {
      report.condition3 = false;
      std::ostringstream msg;
      msg << "condition 3: branch sums to " << sum << ", not exactly " << m;
      report.violations.push_back(msg.str());
      break;
    }
  }

  if (report.valid()) {
    // Registers are the column transpose of the branch list: qudit i holds
    // branch element i, logical level k is the branch index.
    report.derived_registers.assign(n_qudits, std::vector<int>(dimension, 0));
    for (int k = 0; k < dimension; ++k)
      for (int i = 0; i < n_qudits; ++i)
        report.derived_registers[i][k] = branches[k][i];
  }
  return report;
}

EncodingSolution make_solution(const std::vector<int>& modes, int n_qudits,
                               int dimension, int m) {
  auto report = check_ghz_conditions(modes, n_qudits, dimension, m);
  if (!report.valid()) {
    std::string msg = "mode set is not a valid GHZ solution:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  EncodingSolution solution;
  solution.n_qudits = n_qudits;
  solution.dimension = dimension;
  solution.n_modes = m;
  solution.encoding_modes = modes;
  std::sort(solution.encoding_modes.begin(), solution.encoding_modes.end());
  solution.branches = build_branch_set(solution.encoding_modes, n_qudits, m);
  solution.qudit_registers = report.derived_registers;
  return solution;
}

SolutionReport check_target_structure(const std::vector<int>& modes, int m,
                                      const TargetStructure& target,
                                      const std::vector<std::vector<int>>& registers) {
  const int n_qudits = target.n_qudits;
  const int dimension = target.dimension;
  if (n_qudits < 1 || dimension < 1) throw std::invalid_argument("bad target shape");
  if (static_cast<int>(modes.size()) != n_qudits * dimension)
    throw std::invalid_argument("mode set size must equal N*d");
  if (target.terms.empty()) throw std::invalid_argument("target needs at least one term");
  validate_mode_set(modes, m);

  if (static_cast<int>(registers.size()) != n_qudits)
    throw std::invalid_argument("need one register per qudit");
  std::map<int, std::pair<int, int>> mode_to_slot;  // mode -> (qudit, level)
  for (int i = 0; i < n_qudits; ++i) {
    if (static_cast<int>(registers[i].size()) != dimension)
      throw std::invalid_argument("each register needs d modes");
    for (int k = 0; k < dimension; ++k) {
      if (!mode_to_slot.emplace(registers[i][k], std::make_pair(i, k)).second)
        throw std::invalid_argument("registers must be disjoint");
    }
  }
  for (int mode : modes)
    if (!mode_to_slot.count(mode))
      throw std::invalid_argument("registers must cover the encoding modes");

  std::set<std::vector<int>> wanted;
  for (const auto& term : target.terms) {
    if (static_cast<int>(term.size()) != n_qudits)
      throw std::invalid_argument("target term length must equal N");
    for (int level : term)
      if (level < 0 || level >= dimension)
        throw std::invalid_argument("target level out of range");
    if (!wanted.insert(term).second)
      throw std::invalid_argument("target terms must be distinct");
  }

  SolutionReport report;
  auto branches =
      build_branch_set(modes, n_qudits, m, kDefaultBranchGuard,
                       static_cast<int>(target.terms.size()));

  report.condition1 = branches.size() == target.terms.size();
  if (!report.condition1)
    report.violations.push_back("branch count does not match the number of target terms");

  std::set<std::vector<int>> realized;
  bool structure_ok = true;
  for (const auto& branch : branches) {
    std::vector<int> term(n_qudits, -1);
    for (int mode : branch) {
      auto [qudit, level] = mode_to_slot.at(mode);
      if (term[qudit] != -1) {
        structure_ok = false;  // two photons on one register
        break;
      }
      term[qudit] = level;
    }
    if (!structure_ok) {
      report.violations.push_back("a branch places two photons in one register");
      break;
    }
    if (!realized.insert(term).second) {
      structure_ok = false;
      report.violations.push_back("two branches map to the same logical term");
      break;
    }
  }
  report.condition2 = report.condition1 && structure_ok && realized == wanted;
  if (report.condition1 && structure_ok && realized != wanted)
    report.violations.push_back("branch terms differ from the target terms");

  report.condition3 = !branches.empty();
  for (const auto& branch : branches) {
    if (std::accumulate(branch.begin(), branch.end(), 0LL) != m) {
      report.condition3 = false;
      report.violations.push_back("a branch does not sum to exactly m");
      break;
    }
  }

  if (report.valid()) report.derived_registers = registers;
  return report;
}

Complex ghz_amplitude_closed_form(int n_qudits, int m) {
  if (n_qudits < 2 || m <= n_qudits)
    throw std::invalid_argument("need N >= 2 and m > N");
  double log_mag = std::lgamma(n_qudits) +
                   0.5 * (std::lgamma(m - n_qudits + 1.0) - (m - 2.0) * std::log(m));
  double sign = (n_qudits % 2 == 0) ? -1.0 : 1.0;
  return {sign * std::exp(log_mag), 0.0};
}

LogProbability success_prob_single_pattern(int n_qudits, int dimension, int m) {
  if (m <= n_qudits * dimension)
    throw std::invalid_argument("need m > N*d");
  double log_p = std::log(static_cast<double>(dimension)) + 2.0 * std::lgamma(n_qudits) +
                 std::lgamma(m - n_qudits + 1.0) - (m - 2.0) * std::log(m);
  return {std::exp(log_p), log_p};
}

EncodingSolution bell_family_solution(int d) {
  if (d < 2) throw std::invalid_argument("need d >= 2");
  int m = 2 * d + 1;
  std::vector<int> modes(2 * d);
  std::iota(modes.begin(), modes.end(), 1);
  return make_solution(modes, 2, d, m);
}

double bell_success_closed_form(int d) {
  if (d < 2) throw std::invalid_argument("need d >= 2");
  return success_prob_single_pattern(2, d, 2 * d + 1).value;
}

EncodingSolution analytic_general_solution(int n_qudits, int dimension) {
  if (n_qudits < 2 || dimension < 2)
    throw std::invalid_argument("need N >= 2 and d >= 2");
  const BigInt n = n_qudits;
  const int nd = n_qudits * dimension;
  BigInt m_big = (boost::multiprecision::pow(n, nd) - 1) /
                 (boost::multiprecision::pow(n, dimension) - 1);
  if (m_big > std::numeric_limits<int>::max() / 2)
    throw TooLargeError("analytic solution mode count " + m_big.str() +
                        " exceeds supported range");
  int m = static_cast<int>(m_big);

  std::vector<int> modes;
  BigInt power = 1;
  for (int i = 1; i <= (n_qudits - 1) * dimension; ++i) {
    modes.push_back(static_cast<int>(power));
    power *= n;
  }
  BigInt base = (boost::multiprecision::pow(n, (n_qudits - 1) * dimension) - 1) /
                (boost::multiprecision::pow(n, dimension) - 1);
  BigInt scale = 1;
  for (int k = 0; k < dimension; ++k) {
    modes.push_back(static_cast<int>(m_big - scale * base));
    scale *= n;
  }
  std::sort(modes.begin(), modes.end());
  return make_solution(modes, n_qudits, dimension, m);
}

ProcrusteanSchedule procrustean(const std::vector<Complex>& amplitudes, int d) {
  if (d < 1 || static_cast<int>(amplitudes.size()) != d)
    throw std::invalid_argument("need d amplitudes");
  ProcrusteanSchedule schedule;
  double min_mag = std::abs(amplitudes[0]);
  for (const auto& a : amplitudes) min_mag = std::min(min_mag, std::abs(a));
  schedule.success = d * min_mag * min_mag;
  schedule.transmissions.resize(d);
  for (int k = 0; k < d; ++k) {
    double mag = std::abs(amplitudes[k]);
    if (mag == 0.0) {
      schedule.degenerate = true;
      schedule.transmissions[k] = 1.0;
    } else {
      schedule.transmissions[k] = min_mag / mag;
    }
  }
  if (schedule.degenerate) schedule.success = 0.0;
  return schedule;
}

}  // namespace qforge
