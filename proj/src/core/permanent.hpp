#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/fock.hpp"
#include "core/unitary.hpp"

namespace qforge {

// Size guard for exact permanents; override with QF_PERMANENT_CEILING.
int permanent_ceiling();

// Exact permanent by Ryser's formula with Gray-code subset iteration,
// O(2^n * n). Compensated accumulation keeps ~10 significant digits near
// cancellation for n up to the ceiling.
Complex permanent(const Matrix& a);

// Reference n! expansion, for validation on small matrices.
Complex permanent_naive(const Matrix& a);

// Permanent of the matrix whose r-th distinct row is repeated row_mult[r]
// times and c-th distinct column col_mult[c] times. Glynn-type formula over
// prod(row_mult[r] + 1) generalized sign vectors, enumerated by a mixed-radix
// Gray code; far cheaper than 2^n when occupations are bunched.
Complex permanent_repeated(const Matrix& compact, const std::vector<int>& row_mult,
                           const std::vector<int>& col_mult);

struct ScatteringAmplitude {
  Complex value;
};

// Transition amplitude <output| U |input> between Fock states:
// permanent of the row/column-selected submatrix over sqrt(prod r_j! s_j!).
// Rows are selected by the output occupation, columns by the input.
ScatteringAmplitude output_amplitude(const Matrix& u, const ModeOccupation& input,
                                     const ModeOccupation& output);

// Exhaustive output distribution; probabilities sum to 1 for unitary u.
std::vector<std::pair<PhotonConfiguration, double>> output_distribution(
    const Matrix& u, const ModeOccupation& input,
    std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace qforge
