#include "core/unitary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qforge {

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix residual = u * u.adjoint() - Matrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

Matrix dft(int m) {
  if (m < 1) throw std::invalid_argument("DFT dimension must be at least 1");
  Matrix u(m, m);
  double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // reduce j*k mod m before multiplying to keep the angle small
      long long phase = (static_cast<long long>(j) * k) % m;
      double angle = 2.0 * std::numbers::pi * static_cast<double>(phase) / m;
      u(j, k) = Complex(std::cos(angle), std::sin(angle)) * norm;
    }
  }
  return u;
}

Matrix beam_splitter(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0))
    throw std::invalid_argument("reflectivity must be in [0, 1]");
  double r = std::sqrt(reflectivity);
  double t = std::sqrt(1.0 - reflectivity);
  Matrix u(2, 2);
  u << Complex(r, 0), Complex(0, t), Complex(0, t), Complex(r, 0);
  return u;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) throw std::invalid_argument("direct sum needs square blocks");
    total += b.rows();
  }
  Matrix out = Matrix::Zero(total, total);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return out;
}

Matrix embed(const Matrix& u, const std::vector<int>& target_modes, int m) {
  if (u.rows() != u.cols()) throw std::invalid_argument("embedded block must be square");
  if (static_cast<int>(target_modes.size()) != u.rows())
    throw std::invalid_argument("target mode count must match block dimension");
  std::vector<bool> seen(m, false);
  for (int mode : target_modes) {
    if (mode < 0 || mode >= m) throw std::invalid_argument("target mode out of range");
    if (seen[mode]) throw std::invalid_argument("target modes must be distinct");
    seen[mode] = true;
  }
  Matrix out = Matrix::Identity(m, m);
  for (std::size_t r = 0; r < target_modes.size(); ++r)
    for (std::size_t c = 0; c < target_modes.size(); ++c)
      out(target_modes[r], target_modes[c]) = u(r, c);
  return out;
}

Matrix interleave_permutation(int blocks, int block_size) {
  if (blocks < 1 || block_size < 1)
    throw std::invalid_argument("interleave needs positive block counts");
  int dim = blocks * block_size;
  Matrix p = Matrix::Zero(dim, dim);
  for (int j = 0; j < blocks; ++j)
    for (int i = 0; i < block_size; ++i)
      p(i * blocks + j, j * block_size + i) = 1.0;
  return p;
}

Matrix hadamard_variant(int d, HadamardVariant variant) {
  if (d < 2) throw std::invalid_argument("Hadamard variants need d >= 2");
  switch (variant) {
    case HadamardVariant::A:
      return dft(2 * d);
    case HadamardVariant::B: {
      Matrix dd = direct_sum({dft(d), dft(d)});
      Matrix d2 = direct_sum(std::vector<Matrix>(d, dft(2)));
      return dd * interleave_permutation(d, 2) * d2;
    }
    case HadamardVariant::C: {
      Matrix d2 = direct_sum(std::vector<Matrix>(d, dft(2)));
      Matrix dd = direct_sum({dft(d), dft(d)});
      return d2 * interleave_permutation(2, d) * dd;
    }
  }
  throw std::invalid_argument("unknown Hadamard variant");
}

}  // namespace qforge
