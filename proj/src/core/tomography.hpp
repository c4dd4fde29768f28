#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/unitary.hpp"

namespace qforge {

// Orthogonal Hermitian operator basis for a d-level system: the rescaled
// identity sqrt(2/d) I followed by the d^2 - 1 traceless generators
// (symmetric, antisymmetric, then diagonal), normalized to Tr(G_i G_j) = 2 d_ij.
struct GeneratorSet {
  int d = 0;
  std::vector<Matrix> generators;
};

GeneratorSet gell_mann(int d);

// Unitary rotating the eigenbasis of a Hermitian operator onto the
// computational basis: U = sum_j |j><v_j|, eigenvalues sorted descending with
// each eigenvector's first significant component made real positive. If
// eigenvalues_out is non-null it receives the sorted eigenvalues.
Matrix generator_rotation(const Matrix& hermitian, Eigen::VectorXd* eigenvalues_out = nullptr);

// Linear-inversion two-qudit state from generator expectations:
// rho = (1/d^2) sum_ij (d/2)^2 <G_i (x) G_j>  G_i (x) G_j.
// The output is Hermitian with unit trace; positivity is not enforced.
Matrix reconstruct_two_qudit(const Eigen::MatrixXd& expectations, int d);

// Uhlmann fidelity (Tr sqrt(sqrt(s) r sqrt(s)))^2 with tiny negative
// eigenvalues clamped to zero.
double fidelity(const Matrix& rho, const Matrix& sigma);

// log2 of the trace norm of the partial transpose over party A.
double log_negativity(const Matrix& rho, int dim_a, int dim_b);

}  // namespace qforge
