#include "core/fock.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"

namespace qforge {

PhotonConfiguration::PhotonConfiguration(std::vector<int> modes_in, int m)
    : modes(std::move(modes_in)), mode_count(m) {
  if (m < 0) throw std::invalid_argument("mode count must be non-negative");
  std::sort(modes.begin(), modes.end());
  for (int mode : modes) {
    if (mode < 0 || mode >= m)
      throw std::invalid_argument("photon mode index out of range");
  }
}

ModeOccupation::ModeOccupation(std::vector<int> counts_in) : counts(std::move(counts_in)) {
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("occupation counts must be non-negative");
  }
}

int ModeOccupation::photon_count() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

ModeOccupation to_occupation(const PhotonConfiguration& config) {
  std::vector<int> counts(config.mode_count, 0);
  for (int mode : config.modes) {
    if (mode < 0 || mode >= config.mode_count)
      throw std::invalid_argument("photon mode index out of range");
    ++counts[mode];
  }
  return ModeOccupation(std::move(counts));
}

PhotonConfiguration to_configuration(const ModeOccupation& occ) {
  std::vector<int> modes;
  modes.reserve(occ.photon_count());
  for (int mode = 0; mode < occ.mode_count(); ++mode)
    modes.insert(modes.end(), occ.counts[mode], mode);
  return PhotonConfiguration(std::move(modes), occ.mode_count());
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::vector<PhotonConfiguration> enumerate_outputs(int n, int m, std::uint64_t guard) {
  if (n < 0 || m <= 0) throw std::invalid_argument("need n >= 0 and m >= 1");
  BigInt total = binomial(static_cast<std::uint64_t>(n) + m - 1, n);
  if (total > guard)
    throw TooLargeError("enumeration of " + total.str() + " configurations exceeds guard");

  std::vector<PhotonConfiguration> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> modes(n, 0);
  for (;;) {
    out.emplace_back(modes, m);
    int i = n - 1;
    while (i >= 0 && modes[i] == m - 1) --i;
    if (i < 0) break;
    int next = modes[i] + 1;
    for (int j = i; j < n; ++j) modes[j] = next;
  }
  if (n == 0) out.assign(1, PhotonConfiguration({}, m));
  return out;
}

BigInt count_constrained_multisets(const std::vector<int>& allowed, int photons,
                                   int modulus, int residue) {
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  if (photons < 0) throw std::invalid_argument("photon count must be non-negative");
  if (residue < 0 || residue >= modulus)
    throw std::invalid_argument("residue out of range");
  std::vector<int> items(allowed);
  std::sort(items.begin(), items.end());
  if (std::adjacent_find(items.begin(), items.end()) != items.end())
    throw std::invalid_argument("allowed modes must be distinct");

  // table[c][r] = multisets of size c over items seen so far with sum = r mod modulus.
  std::vector<std::vector<BigInt>> table(photons + 1, std::vector<BigInt>(modulus, 0));
  table[0][0] = 1;
  for (int item : items) {
    int step = ((item % modulus) + modulus) % modulus;
    // ascending count order lets each item be reused any number of times
    for (int c = 0; c < photons; ++c) {
      for (int r = 0; r < modulus; ++r) {
        if (table[c][r] == 0) continue;
        table[c + 1][(r + step) % modulus] += table[c][r];
      }
    }
  }
  return table[photons][residue];
}

}  // namespace qforge
