#include "core/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"

namespace qforge {

GeneratorSet gell_mann(int d) {
  if (d < 2) throw std::invalid_argument("need d >= 2");
  GeneratorSet set;
  set.d = d;
  set.generators.push_back(std::sqrt(2.0 / d) * Matrix::Identity(d, d));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = sym(k, j) = Complex(1.0, 0.0);
      set.generators.push_back(sym);
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = Complex(0.0, -1.0);
      anti(k, j) = Complex(0.0, 1.0);
      set.generators.push_back(anti);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = Complex(norm, 0.0);
    diag(l, l) = Complex(-norm * l, 0.0);
    set.generators.push_back(diag);
  }
  return set;
}

Matrix generator_rotation(const Matrix& hermitian, Eigen::VectorXd* eigenvalues_out) {
  if (hermitian.rows() != hermitian.cols())
    throw std::invalid_argument("operator must be square");
  const int d = static_cast<int>(hermitian.rows());
  if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("operator must be Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigendecomposition failed to converge");

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  // Eigen sorts ascending; we fix descending order
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return solver.eigenvalues()(a) > solver.eigenvalues()(b);
  });

  Matrix u(d, d);
  Eigen::VectorXd evals(d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXcd v = solver.eigenvectors().col(order[j]);
    // deterministic global phase: first significant component real positive
    for (int i = 0; i < d; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    u.row(j) = v.adjoint();
    evals(j) = solver.eigenvalues()(order[j]);
  }

  double residual = 0.0;
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXcd v = u.row(j).adjoint();
    residual = std::max(residual, (hermitian * v - evals(j) * v).norm());
  }
  if (residual > 1e-10) throw NumericError("eigendecomposition residual above tolerance");

  if (eigenvalues_out) *eigenvalues_out = evals;
  return u;
}

Matrix reconstruct_two_qudit(const Eigen::MatrixXd& expectations, int d) {
  const int n_gen = d * d;
  if (expectations.rows() != n_gen || expectations.cols() != n_gen)
    throw std::invalid_argument("need all d^2 x d^2 generator expectations");
  GeneratorSet set = gell_mann(d);
  Matrix rho = Matrix::Zero(n_gen, n_gen);
  double scale = (d / 2.0) * (d / 2.0) / (d * d);
  for (int i = 0; i < n_gen; ++i) {
    for (int j = 0; j < n_gen; ++j) {
      double r = expectations(i, j);
      if (r == 0.0) continue;
      Matrix kron(n_gen, n_gen);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          kron.block(a * d, b * d, d, d) = set.generators[i](a, b) * set.generators[j];
      rho += (scale * r) * kron;
    }
  }
  return rho;
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != rho.cols() || sigma.rows() != sigma.cols() || rho.rows() != sigma.rows())
    throw std::invalid_argument("states must be square and of equal dimension");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8 ||
      (sigma - sigma.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("states must be Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> s_solver(sigma);
  if (s_solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  Eigen::VectorXd s_evals = s_solver.eigenvalues();
  for (int i = 0; i < s_evals.size(); ++i)
    s_evals(i) = s_evals(i) > 1e-12 ? std::sqrt(s_evals(i)) : 0.0;
  Matrix sqrt_sigma = s_solver.eigenvectors() * s_evals.asDiagonal() *
                      s_solver.eigenvectors().adjoint();

  Matrix inner = sqrt_sigma * rho * sqrt_sigma;
  Eigen::SelfAdjointEigenSolver<Matrix> i_solver((inner + inner.adjoint()) * 0.5);
  if (i_solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  double trace = 0.0;
  for (int i = 0; i < i_solver.eigenvalues().size(); ++i) {
    double v = i_solver.eigenvalues()(i);
    if (v > 1e-12) trace += std::sqrt(v);
  }
  return trace * trace;
}

double log_negativity(const Matrix& rho, int dim_a, int dim_b) {
  if (rho.rows() != rho.cols() || rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("state dimension must equal dim_a * dim_b");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("state must be Hermitian");

  Matrix pt(rho.rows(), rho.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int ap = 0; ap < dim_a; ++ap)
      for (int b = 0; b < dim_b; ++b)
        for (int bp = 0; bp < dim_b; ++bp)
          pt(a * dim_b + b, ap * dim_b + bp) = rho(ap * dim_b + b, a * dim_b + bp);

  if ((pt - pt.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericError("partial transpose is not Hermitian; check party dimensions");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(pt);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
  double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

}  // namespace qforge
