#include "core/bell_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/permanent.hpp"

namespace qforge {

namespace {

constexpr double kSupportTol = 1e-9;    // amplitude treated as zero support
constexpr double kMaxEntTol = 1e-9;     // |sigma_k - 1/sqrt(d)| tolerance
constexpr double kFullRankFloor = 1e-12;

}  // namespace

int pair_basis_index(int i, int j, int modes) {
  if (i > j) std::swap(i, j);
  return i * modes - i * (i - 1) / 2 + (j - i);
}

std::vector<ConditionalState> enumerate_conditional_states(const HeraldedCircuit& circuit,
                                                           std::uint64_t guard) {
  const int m = static_cast<int>(circuit.unitary.rows());
  const int n = circuit.input.photon_count();
  if (n < 2) throw std::invalid_argument("need at least two photons");
  std::vector<bool> is_herald(m, false), covered(m, false);
  for (int mode : circuit.herald_modes) {
    if (mode < 0 || mode >= m) throw std::invalid_argument("herald mode out of range");
    is_herald[mode] = true;
    covered[mode] = true;
  }
  for (int mode : circuit.computational_modes) {
    if (mode < 0 || mode >= m) throw std::invalid_argument("computational mode out of range");
    if (covered[mode]) throw std::invalid_argument("herald and computational modes overlap");
    covered[mode] = true;
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }))
    throw std::invalid_argument("herald and computational modes must cover the circuit");

  const int herald_photons = n - 2;
  const int n_comp = static_cast<int>(circuit.computational_modes.size());
  const int pair_dim = n_comp * (n_comp + 1) / 2;

  BigInt herald_count =
      binomial(circuit.herald_modes.size() + herald_photons - 1, herald_photons);
  if (herald_count > guard)
    throw TooLargeError("herald enumeration of " + herald_count.str() + " outcomes exceeds guard");

  std::vector<ConditionalState> states;
  std::vector<int> occupancy(circuit.herald_modes.size(), 0);
  auto emit = [&]() {
    ModeOccupation herald(std::vector<int>(m, 0));
    for (std::size_t i = 0; i < circuit.herald_modes.size(); ++i)
      herald.counts[circuit.herald_modes[i]] = occupancy[i];
    Eigen::VectorXcd amps(pair_dim);
    double weight = 0.0;
    for (int a = 0; a < n_comp; ++a) {
      for (int b = a; b < n_comp; ++b) {
        ModeOccupation out = herald;
        ++out.counts[circuit.computational_modes[a]];
        ++out.counts[circuit.computational_modes[b]];
        Complex amp = output_amplitude(circuit.unitary, circuit.input, out).value;
        amps(pair_basis_index(a, b, n_comp)) = amp;
        weight += std::norm(amp);
      }
    }
    if (weight > 1e-30) {
      ConditionalState state;
      state.herald = std::move(herald);
      state.weight = weight;
      state.amplitudes = amps / std::sqrt(weight);
      states.push_back(std::move(state));
    }
  };
  auto recurse = [&](auto&& self, std::size_t idx, int remaining) -> void {
    if (idx + 1 == occupancy.size()) {
      occupancy[idx] = remaining;
      emit();
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      occupancy[idx] = c;
      self(self, idx + 1, remaining - c);
    }
  };
  if (occupancy.empty()) {
    if (herald_photons == 0) emit();
  } else {
    recurse(recurse, 0, herald_photons);
  }
  return states;
}

std::optional<std::vector<double>> schmidt_decomposition(
    const Eigen::VectorXcd& amplitudes, const std::vector<int>& computational_modes,
    const std::vector<int>& register_a, const std::vector<int>& register_b) {
  const int n_comp = static_cast<int>(computational_modes.size());
  const int d = static_cast<int>(register_a.size());
  if (static_cast<int>(register_b.size()) != d)
    throw std::invalid_argument("registers must have equal size");

  // positions of the registers within the computational mode list
  std::vector<int> slot(n_comp, -1);  // -1 free, 0 register A, 1 register B
  std::vector<int> level(n_comp, -1);
  auto locate = [&](int mode) {
    auto it = std::find(computational_modes.begin(), computational_modes.end(), mode);
    if (it == computational_modes.end())
      throw std::invalid_argument("register mode is not a computational mode");
    return static_cast<int>(it - computational_modes.begin());
  };
  for (int k = 0; k < d; ++k) {
    int pa = locate(register_a[k]);
    int pb = locate(register_b[k]);
    if (slot[pa] != -1 || slot[pb] != -1)
      throw std::invalid_argument("registers overlap");
    slot[pa] = 0;
    level[pa] = k;
    slot[pb] = 1;
    level[pb] = k;
  }

  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < n_comp; ++a) {
    for (int b = a; b < n_comp; ++b) {
      Complex amp = amplitudes(pair_basis_index(a, b, n_comp));
      if (std::abs(amp) <= kSupportTol) continue;
      if (a == b || slot[a] == -1 || slot[b] == -1 || slot[a] == slot[b])
        return std::nullopt;  // bunched or not one photon per register
      if (slot[a] == 0)
        coeff(level[a], level[b]) = amp;
      else
        coeff(level[b], level[a]) = amp;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff);
  std::vector<double> sigma(svd.singularValues().data(),
                            svd.singularValues().data() + d);
  return sigma;
}

SuccessBreakdown classify_bell_success(const std::vector<ConditionalState>& states,
                                       int d, const HeraldedCircuit& circuit) {
  const int n_comp = static_cast<int>(circuit.computational_modes.size());
  if (n_comp != 2 * d) throw std::invalid_argument("need exactly 2d computational modes");

  // all balanced bipartitions, first computational mode pinned to side A
  std::vector<std::pair<std::vector<int>, std::vector<int>>> partitions;
  std::vector<int> pick;
  auto gen = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == d - 1) {
      std::vector<int> a{circuit.computational_modes[0]};
      std::vector<int> b;
      for (int i = 1; i < n_comp; ++i) {
        if (std::find(pick.begin(), pick.end(), i) != pick.end())
          a.push_back(circuit.computational_modes[i]);
        else
          b.push_back(circuit.computational_modes[i]);
      }
      partitions.emplace_back(std::move(a), std::move(b));
      return;
    }
    for (int i = start; i < n_comp; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  gen(gen, 1);

  const double target = 1.0 / std::sqrt(static_cast<double>(d));
  auto maximally_entangled = [&](const std::vector<double>& sigma) {
    return std::all_of(sigma.begin(), sigma.end(),
                       [&](double s) { return std::abs(s - target) <= kMaxEntTol; });
  };

  SuccessBreakdown breakdown;
  for (const auto& state : states) {
    HeraldLedgerEntry entry;
    entry.herald = state.herald;
    entry.weight = state.weight;

    if (circuit.fixed_partition) {
      auto sigma = schmidt_decomposition(state.amplitudes, circuit.computational_modes,
                                         circuit.fixed_partition->first,
                                         circuit.fixed_partition->second);
      if (sigma && maximally_entangled(*sigma)) {
        entry.fixed_partition_ok = true;
        breakdown.p_f += state.weight;
      }
    }

    double best_corrected = 0.0;
    std::vector<double> best_sigma;
    for (const auto& [reg_a, reg_b] : partitions) {
      auto sigma =
          schmidt_decomposition(state.amplitudes, circuit.computational_modes, reg_a, reg_b);
      if (!sigma) continue;
      if (!entry.some_partition_ok && maximally_entangled(*sigma)) {
        entry.some_partition_ok = true;
        breakdown.p_a += state.weight;
      }
      double smallest = *std::min_element(sigma->begin(), sigma->end());
      if (smallest > kFullRankFloor) {
        double corrected = d * smallest * smallest;
        if (corrected > best_corrected) {
          best_corrected = corrected;
          best_sigma = *sigma;
        }
      }
    }
    entry.corrected_fraction = best_corrected;
    entry.schmidt = best_sigma;
    breakdown.p_c += state.weight * best_corrected;
    breakdown.ledger.push_back(std::move(entry));
  }
  return breakdown;
}

HeraldedCircuit ztl_bell_circuit(int d) {
  EncodingSolution bell = bell_family_solution(d);
  HeraldedCircuit circuit;
  circuit.unitary = dft(bell.n_modes);
  circuit.input = ModeOccupation(std::vector<int>(bell.n_modes, 1));
  circuit.herald_modes = {0};
  circuit.computational_modes = bell.encoding_modes;
  circuit.fixed_partition = {{bell.qudit_registers[0], bell.qudit_registers[1]}};
  return circuit;
}

namespace {

// Tap layout shared by the experimental circuits: 2d signal modes feed the
// 2d x 2d core unitary, then each signal mode couples to its own detector
// mode through a beam splitter of reflectivity (d-1)/d.
HeraldedCircuit tapped_circuit(int d, const Matrix& core) {
  const int m = 4 * d;
  Matrix u = direct_sum({core, Matrix::Identity(2 * d, 2 * d)});
  double reflectivity = static_cast<double>(d - 1) / d;
  Matrix taps = Matrix::Identity(m, m);
  for (int i = 0; i < 2 * d; ++i)
    taps = embed(beam_splitter(reflectivity), {i, 2 * d + i}, m) * taps;
  HeraldedCircuit circuit;
  circuit.unitary = taps * u;
  std::vector<int> input(m, 0);
  std::fill(input.begin(), input.begin() + 2 * d, 1);
  circuit.input = ModeOccupation(std::move(input));
  for (int i = 0; i < 2 * d; ++i) circuit.computational_modes.push_back(i);
  for (int i = 2 * d; i < m; ++i) circuit.herald_modes.push_back(i);
  std::vector<int> reg_a, reg_b;
  for (int k = 0; k < d; ++k) {
    reg_a.push_back(k);
    reg_b.push_back(d + k);
  }
  circuit.fixed_partition = {{reg_a, reg_b}};
  return circuit;
}

}  // namespace

HeraldedCircuit experimental_bell_circuit_v2(int d, HadamardVariant variant) {
  return tapped_circuit(d, hadamard_variant(d, variant));
}

HeraldedCircuit experimental_bell_circuit_v3(int d) {
  // v2-C with its first two layers exchanged
  Matrix core = direct_sum(std::vector<Matrix>(d, dft(2))) *
                direct_sum({dft(d), dft(d)}) * interleave_permutation(2, d);
  return tapped_circuit(d, core);
}

}  // namespace qforge
