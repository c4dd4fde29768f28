#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qforge {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationGuard = 5'000'000;

// An n-photon arrangement over m modes, stored as a non-decreasing list of
// mode indices. Ordering carries no physical meaning; sorting makes equal
// multisets compare equal.
struct PhotonConfiguration {
  std::vector<int> modes;
  int mode_count = 0;

  PhotonConfiguration() = default;
  PhotonConfiguration(std::vector<int> modes_in, int m);

  int photon_count() const { return static_cast<int>(modes.size()); }
  bool operator==(const PhotonConfiguration&) const = default;
};

// Photon counts per mode; counts.size() is the mode count.
struct ModeOccupation {
  std::vector<int> counts;

  ModeOccupation() = default;
  explicit ModeOccupation(std::vector<int> counts_in);
  ModeOccupation(std::initializer_list<int> counts_in)
      : ModeOccupation(std::vector<int>(counts_in)) {}

  int mode_count() const { return static_cast<int>(counts.size()); }
  int photon_count() const;
  bool operator==(const ModeOccupation&) const = default;
};

ModeOccupation to_occupation(const PhotonConfiguration& config);
PhotonConfiguration to_configuration(const ModeOccupation& occ);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// All multisets of size n over modes {0..m-1}, lexicographic, each exactly
// once. Throws TooLargeError if the count binomial(n+m-1, n) exceeds guard.
std::vector<PhotonConfiguration> enumerate_outputs(
    int n, int m, std::uint64_t guard = kDefaultEnumerationGuard);

// Exact number of multisets of size `photons` over `allowed` whose element
// sum is congruent to `residue` mod `modulus`. Dynamic programming over
// (item, count, residue) in exact integer arithmetic.
BigInt count_constrained_multisets(const std::vector<int>& allowed, int photons,
                                   int modulus, int residue);

}  // namespace qforge
