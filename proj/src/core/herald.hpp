#pragma once

#include <cstdint>
#include <vector>

#include "core/fock.hpp"
#include "core/unitary.hpp"
#include "core/ztl.hpp"

namespace qforge {

struct BoostedEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  long long n_samples = 0;
  long long n_valid_heralds = 0;  // candidate outputs before distillation
  long long n_accepted = 0;
  std::uint64_t seed = 0;
};

// True when the occupation is a legal heralding pattern for the solution:
// m-N photons, all on heralding modes, port sum divisible by m.
bool herald_is_valid(const EncodingSolution& solution, const ModeOccupation& herald);

// Branch amplitudes conditioned on an observed herald, renormalized over the
// d-branch subspace. Throws when the herald is invalid or the branch subspace
// carries no weight (all magnitudes below 1e-14).
std::vector<Complex> conditional_branch_amplitudes(const Matrix& u,
                                                   const EncodingSolution& solution,
                                                   const ModeOccupation& herald);

// Monte Carlo estimate of the distillation-corrected success probability:
// samples full DFT outputs, keeps those whose herald part sums to 0 mod m and
// whose encoding part equals one branch, then accepts each with the
// Procrustean probability d min_k |a_k|^2 via an auxiliary uniform draw.
// Identical (solution, n_samples, seed, threads) give identical results.
BoostedEstimate boosted_success_estimate(const EncodingSolution& solution,
                                         long long n_samples, std::uint64_t seed,
                                         int threads = 0);

// Exact analogue of the estimator: sums d min_k |amp(herald U branch_k)|^2
// over every valid heralding pattern. Guard bounds the number of valid
// heralds (checked with exact counting before enumerating).
double exhaustive_boosted_success(const EncodingSolution& solution,
                                  std::uint64_t guard = 2'000'000, int threads = 0);

}  // namespace qforge
