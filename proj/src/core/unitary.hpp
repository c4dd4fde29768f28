#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTol = 1e-10;

bool is_unitary(const Matrix& u, double tol = kUnitarityTol);

// m-mode discrete Fourier transform, entry (j,k) = exp(2*pi*i*j*k/m)/sqrt(m).
Matrix dft(int m);

// Two-mode beam splitter [[sqrt(R), i sqrt(1-R)], [i sqrt(1-R), sqrt(R)]].
Matrix beam_splitter(double reflectivity);

Matrix direct_sum(const std::vector<Matrix>& blocks);

// Acts as u on target_modes (in the given order) and as identity elsewhere.
Matrix embed(const Matrix& u, const std::vector<int>& target_modes, int m);

// Permutation on blocks*block_size modes routing mode i of block j to mode j
// of block i. Self-inverse up to transposition: P * P^T = I.
Matrix interleave_permutation(int blocks, int block_size);

// In composed products the rightmost factor acts first on the input modes.
enum class HadamardVariant { A, B, C };
Matrix hadamard_variant(int d, HadamardVariant variant);

}  // namespace qforge
