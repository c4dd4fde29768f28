#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/fock.hpp"
#include "core/unitary.hpp"
#include "core/ztl.hpp"

namespace qforge {

// Pairwise internal-state overlap matrix for n photons sharing the same
// mutual overlap: unit diagonal, off-diagonals sqrt(x) where x in [0,1] is
// the two-photon interference visibility |<psi_i|psi_j>|^2.
Matrix uniform_overlap(int n, double indistinguishability);

// Feasibility ceiling for the 2^{2n} evaluation; override with QF_TICHY_CEILING.
int tichy_ceiling();

// Output probability for partially distinguishable photons:
//   P = (1/prod r_j! s_j!) sum_{sigma,rho} prod_j M_{sigma_j,j} M*_{rho_j,j} S_{rho_j,sigma_j}
// where M selects rows of u by the input occupation and columns by the output.
// Evaluated by double inclusion-exclusion over the ranges of sigma and rho,
// O(n 2^{2n}); the fully indistinguishable and fully distinguishable limits
// reduce to single-permanent evaluations and take those paths exactly.
double tichy_probability(const Matrix& u, const ModeOccupation& input,
                         const ModeOccupation& output, const Matrix& overlap);

struct TwoQuditProbabilities {
  Eigen::MatrixXd conditional;  // d x d, normalized over the computational outcomes
  double herald_marginal = 0.0;
};

// Joint detection probabilities for a heralded Bell pair measured after local
// basis rotations on the two qudit registers, conditioned on the herald
// (all auxiliary photons in mode 0) and postselected on the computational
// subspace.
TwoQuditProbabilities heralded_two_qudit_probabilities(const EncodingSolution& bell,
                                                       double indistinguishability,
                                                       const Matrix& rotation1,
                                                       const Matrix& rotation2);

struct DistinguishabilityPoint {
  double fidelity = 0.0;
  double log_negativity = 0.0;
};

// Full pipeline for one grid point: simulate tomography of the heralded Bell
// state at the given indistinguishability, reconstruct the two-qudit state,
// and evaluate fidelity to the ideal state and logarithmic negativity.
DistinguishabilityPoint distinguishability_point(int d, double indistinguishability,
                                                 int threads = 0);

}  // namespace qforge
