#include "core/herald.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/permanent.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"

namespace qforge {

namespace {

constexpr double kAmplitudeFloor = 1e-14;

ModeOccupation all_singles(int m) {
  return ModeOccupation(std::vector<int>(m, 1));
}

// herald + branch photons as one output occupation
ModeOccupation combine(const ModeOccupation& herald, const std::vector<int>& branch) {
  ModeOccupation out = herald;
  for (int mode : branch) ++out.counts[mode];
  return out;
}

}  // namespace

bool herald_is_valid(const EncodingSolution& solution, const ModeOccupation& herald) {
  if (herald.mode_count() != solution.n_modes) return false;
  if (herald.photon_count() != solution.n_modes - solution.n_qudits) return false;
  std::vector<bool> encoding(solution.n_modes, false);
  for (int mode : solution.encoding_modes) encoding[mode] = true;
  long long sum = 0;
  for (int mode = 0; mode < solution.n_modes; ++mode) {
    if (herald.counts[mode] == 0) continue;
    if (encoding[mode]) return false;
    sum += static_cast<long long>(herald.counts[mode]) * mode;
  }
  return sum % solution.n_modes == 0;
}

std::vector<Complex> conditional_branch_amplitudes(const Matrix& u,
                                                   const EncodingSolution& solution,
                                                   const ModeOccupation& herald) {
  if (!herald_is_valid(solution, herald))
    throw std::invalid_argument("not a valid heralding pattern for this solution");
  ModeOccupation input = all_singles(solution.n_modes);
  std::vector<Complex> amps;
  amps.reserve(solution.branches.size());
  double norm2 = 0.0;
  for (const auto& branch : solution.branches) {
    Complex a = output_amplitude(u, input, combine(herald, branch)).value;
    norm2 += std::norm(a);
    amps.push_back(a);
  }
  if (norm2 < kAmplitudeFloor * kAmplitudeFloor)
    throw NumericError("herald has no support on the branch subspace");
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return amps;
}

BoostedEstimate boosted_success_estimate(const EncodingSolution& solution,
                                         long long n_samples, std::uint64_t seed,
                                         int threads) {
  if (n_samples <= 0) throw std::invalid_argument("need a positive sample count");
  const int m = solution.n_modes;
  const int n_qudits = solution.n_qudits;
  const int d = solution.dimension;
  const Matrix u = dft(m);
  BosonSampler sampler(u, all_singles(m));

  // branch_of[mode]: index of the branch containing the mode, -1 for herald
  // modes. Valid solutions have disjoint branches.
  std::vector<int> branch_of(m, -1);
  for (std::size_t b = 0; b < solution.branches.size(); ++b)
    for (int mode : solution.branches[b]) branch_of[mode] = static_cast<int>(b);

  const int n_workers = resolve_threads(threads);
  struct WorkerTally {
    long long valid = 0;
    long long accepted = 0;
  };
  std::vector<WorkerTally> tallies(n_workers);

  parallel_slices(static_cast<std::size_t>(n_samples), n_workers,
                  [&](int worker, std::size_t begin, std::size_t end) {
    auto rng = substream(seed, static_cast<std::uint64_t>(worker));
    BosonSampler::Workspace ws;
    std::vector<int> modes;
    modes.reserve(m);
    std::vector<std::uint8_t> branch_used(m, 0);
    auto& tally = tallies[worker];

    for (std::size_t s = begin; s < end; ++s) {
      int x_count = 0;
      int forced_branch = -1;
      std::fill(branch_used.begin(), branch_used.end(), 0);
      // a sample dies as soon as its encoding part can no longer equal a branch
      bool complete = sampler.sample_into(rng, ws, modes, [&](int mode) {
        int b = branch_of[mode];
        if (b < 0) return true;
        if (++x_count > n_qudits) return false;
        if (forced_branch < 0) forced_branch = b;
        else if (forced_branch != b) return false;
        if (branch_used[mode]) return false;
        branch_used[mode] = 1;
        return true;
      });
      if (!complete || x_count != n_qudits) continue;

      ModeOccupation herald(std::vector<int>(m, 0));
      long long herald_sum = 0;
      for (int mode : modes) {
        if (branch_of[mode] >= 0) continue;
        ++herald.counts[mode];
        herald_sum += mode;
      }
      if (herald_sum % m != 0) continue;

      ++tally.valid;
      double p_accept = 0.0;
      try {
        auto amps = conditional_branch_amplitudes(u, solution, herald);
        double min2 = std::norm(amps[0]);
        for (const auto& a : amps) min2 = std::min(min2, std::norm(a));
        p_accept = d * min2;
      } catch (const NumericError&) {
        // branch subspace below the amplitude floor: distillation cannot succeed
      }
      if (uniform01(rng) < p_accept) ++tally.accepted;
    }
  });

  BoostedEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  for (const auto& t : tallies) {
    est.n_valid_heralds += t.valid;
    est.n_accepted += t.accepted;
  }
  est.p_hat = static_cast<double>(est.n_accepted) / static_cast<double>(n_samples);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
  return est;
}

double exhaustive_boosted_success(const EncodingSolution& solution, std::uint64_t guard,
                                  int threads) {
  const int m = solution.n_modes;
  const int d = solution.dimension;
  const int herald_photons = m - solution.n_qudits;
  auto herald_modes = solution.heralding_modes();

  BigInt valid_count = count_constrained_multisets(herald_modes, herald_photons, m, 0);
  if (valid_count > guard)
    throw TooLargeError("valid herald count " + valid_count.str() + " exceeds guard");

  // enumerate occupations of the herald modes with the residue constraint
  std::vector<std::vector<int>> heralds;
  heralds.reserve(static_cast<std::size_t>(valid_count));
  std::vector<int> occupancy(herald_modes.size(), 0);
  auto recurse = [&](auto&& self, std::size_t idx, int remaining, long long sum) -> void {
    if (idx + 1 == herald_modes.size()) {
      occupancy[idx] = remaining;
      if ((sum + static_cast<long long>(remaining) * herald_modes[idx]) % m == 0)
        heralds.push_back(occupancy);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      occupancy[idx] = c;
      self(self, idx + 1, remaining - c, sum + static_cast<long long>(c) * herald_modes[idx]);
    }
  };
  if (!herald_modes.empty()) recurse(recurse, 0, herald_photons, 0);

  const Matrix u = dft(m);
  ModeOccupation input = all_singles(m);
  const int n_workers = resolve_threads(threads);
  std::vector<double> partial(n_workers, 0.0);
  parallel_slices(heralds.size(), n_workers, [&](int worker, std::size_t begin, std::size_t end) {
    double acc = 0.0, comp = 0.0;  // Kahan
    for (std::size_t h = begin; h < end; ++h) {
      ModeOccupation herald(std::vector<int>(m, 0));
      for (std::size_t i = 0; i < herald_modes.size(); ++i)
        herald.counts[herald_modes[i]] = heralds[h][i];
      double min2 = -1.0;
      for (const auto& branch : solution.branches) {
        double a2 = std::norm(output_amplitude(u, input, combine(herald, branch)).value);
        min2 = min2 < 0.0 ? a2 : std::min(min2, a2);
      }
      double term = d * std::max(min2, 0.0);
      double y = term - comp;
      double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    partial[worker] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace qforge
