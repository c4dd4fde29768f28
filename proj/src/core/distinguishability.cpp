#include "core/distinguishability.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/permanent.hpp"
#include "core/tomography.hpp"

namespace qforge {

Matrix uniform_overlap(int n, double indistinguishability) {
  if (n < 1) throw std::invalid_argument("need at least one photon");
  if (!(indistinguishability >= 0.0 && indistinguishability <= 1.0))
    throw std::invalid_argument("indistinguishability must be in [0, 1]");
  double overlap = std::sqrt(indistinguishability);
  Matrix s = Matrix::Constant(n, n, Complex(overlap, 0.0));
  s.diagonal().setConstant(Complex(1.0, 0.0));
  return s;
}

int tichy_ceiling() {
  static const int ceiling = [] {
    if (const char* env = std::getenv("QF_TICHY_CEILING")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 14;
  }();
  return ceiling;
}

namespace {

double occupation_log_norm(const ModeOccupation& occ) {
  double log_norm = 0.0;
  for (int c : occ.counts) log_norm += std::lgamma(c + 1.0);
  return log_norm;
}

}  // namespace

double tichy_probability(const Matrix& u, const ModeOccupation& input,
                         const ModeOccupation& output, const Matrix& overlap) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
  const int m = static_cast<int>(u.rows());
  if (input.mode_count() != m || output.mode_count() != m)
    throw std::invalid_argument("occupation length must match the unitary dimension");
  const int n = input.photon_count();
  if (n != output.photon_count())
    throw std::invalid_argument("input and output photon numbers differ");
  if (overlap.rows() != n || overlap.cols() != n)
    throw std::invalid_argument("overlap matrix must be n x n");
  if (n == 0) return 1.0;
  if (n > tichy_ceiling())
    throw TooLargeError("photon number exceeds the distinguishability ceiling");

  // expand photon lists
  std::vector<int> in_modes, out_modes;
  for (int mode = 0; mode < m; ++mode) {
    in_modes.insert(in_modes.end(), input.counts[mode], mode);
    out_modes.insert(out_modes.end(), output.counts[mode], mode);
  }

  bool all_ones = true, identity = true;
  for (int a = 0; a < n && (all_ones || identity); ++a) {
    for (int b = 0; b < n; ++b) {
      Complex v = overlap(a, b);
      if (v != Complex(1.0, 0.0)) all_ones = false;
      if (v != Complex(a == b ? 1.0 : 0.0, 0.0)) identity = false;
      if (!all_ones && !identity) break;
    }
  }

  double log_norm = occupation_log_norm(input) + occupation_log_norm(output);

  if (all_ones) {
    // indistinguishable limit: squared permanent
    Complex amp = output_amplitude(u, input, output).value;
    return std::norm(amp);
  }
  if (identity) {
    // classical limit: permanent of elementwise squared moduli
    std::vector<int> in_sel, in_mult, out_sel, out_mult;
    for (int mode = 0; mode < m; ++mode) {
      if (input.counts[mode] > 0) {
        in_sel.push_back(mode);
        in_mult.push_back(input.counts[mode]);
      }
      if (output.counts[mode] > 0) {
        out_sel.push_back(mode);
        out_mult.push_back(output.counts[mode]);
      }
    }
    Matrix sq(in_sel.size(), out_sel.size());
    for (std::size_t a = 0; a < in_sel.size(); ++a)
      for (std::size_t j = 0; j < out_sel.size(); ++j)
        sq(a, j) = Complex(std::norm(u(out_sel[j], in_sel[a])), 0.0);
    Complex perm = permanent_repeated(sq, in_mult, out_mult);
    return perm.real() * std::exp(-log_norm);
  }

  // M[a][j]: amplitude from input photon a to output slot j
  std::vector<double> m_re(static_cast<std::size_t>(n) * n), m_im(m_re.size());
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j) {
      Complex v = u(out_modes[j], in_modes[a]);
      m_re[static_cast<std::size_t>(a) * n + j] = v.real();
      m_im[static_cast<std::size_t>(a) * n + j] = v.imag();
    }
  std::vector<double> s_re(static_cast<std::size_t>(n) * n), s_im(s_re.size());
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      Complex v = overlap(b, a);
      s_re[static_cast<std::size_t>(b) * n + a] = v.real();
      s_im[static_cast<std::size_t>(b) * n + a] = v.imag();
    }

  // Double inclusion-exclusion: sum over the ranges A (of sigma) and B (of
  // rho). For fixed A, G[b][j] = sum_{a in A} M[a][j] S[b][a]; the inner Gray
  // sweep over B maintains T[j] = sum_{b in B} conj(M[b][j]) G[b][j].
  std::vector<double> g_re(static_cast<std::size_t>(n) * n, 0.0), g_im(g_re.size(), 0.0);
  std::vector<double> t_re(n, 0.0), t_im(n, 0.0);

  double total_re = 0.0, total_im = 0.0;
  const std::uint64_t full = 1ULL << n;
  std::uint64_t a_mask = 0;
  int a_bits = 0;
  // iterate A through Gray order; A = empty contributes nothing
  for (std::uint64_t ta = 1; ta < full; ++ta) {
    int a_flip = std::countr_zero(ta);
    a_mask ^= 1ULL << a_flip;
    a_bits += (a_mask >> a_flip) & 1 ? 1 : -1;
    double a_dir = (a_mask >> a_flip) & 1 ? 1.0 : -1.0;
    const double* mr = m_re.data() + static_cast<std::size_t>(a_flip) * n;
    const double* mi = m_im.data() + static_cast<std::size_t>(a_flip) * n;
    for (int b = 0; b < n; ++b) {
      double sr = a_dir * s_re[static_cast<std::size_t>(b) * n + a_flip];
      double si = a_dir * s_im[static_cast<std::size_t>(b) * n + a_flip];
      double* gr = g_re.data() + static_cast<std::size_t>(b) * n;
      double* gi = g_im.data() + static_cast<std::size_t>(b) * n;
      for (int j = 0; j < n; ++j) {
        gr[j] += mr[j] * sr - mi[j] * si;
        gi[j] += mr[j] * si + mi[j] * sr;
      }
    }

    // inner sweep over B for this A
    std::fill(t_re.begin(), t_re.end(), 0.0);
    std::fill(t_im.begin(), t_im.end(), 0.0);
    std::uint64_t b_mask = 0;
    int b_bits = 0;
    for (std::uint64_t tb = 1; tb < full; ++tb) {
      int b_flip = std::countr_zero(tb);
      b_mask ^= 1ULL << b_flip;
      double b_dir = (b_mask >> b_flip) & 1 ? 1.0 : -1.0;
      b_bits += (b_mask >> b_flip) & 1 ? 1 : -1;
      const double* mbr = m_re.data() + static_cast<std::size_t>(b_flip) * n;
      const double* mbi = m_im.data() + static_cast<std::size_t>(b_flip) * n;
      const double* gr = g_re.data() + static_cast<std::size_t>(b_flip) * n;
      const double* gi = g_im.data() + static_cast<std::size_t>(b_flip) * n;
      for (int j = 0; j < n; ++j) {
        // conj(M[b][j]) * G[b][j]
        t_re[j] += b_dir * (mbr[j] * gr[j] + mbi[j] * gi[j]);
        t_im[j] += b_dir * (mbr[j] * gi[j] - mbi[j] * gr[j]);
      }
      double pr = 1.0, pi = 0.0;
      for (int j = 0; j < n; ++j) {
        double nr = pr * t_re[j] - pi * t_im[j];
        pi = pr * t_im[j] + pi * t_re[j];
        pr = nr;
      }
      if ((2 * n - a_bits - b_bits) & 1) {
        total_re -= pr;
        total_im -= pi;
      } else {
        total_re += pr;
        total_im += pi;
      }
    }
  }

  if (std::abs(total_im) > 1e-9 * std::max(1.0, std::abs(total_re)))
    throw NumericError("probability acquired a non-negligible imaginary part");
  return total_re * std::exp(-log_norm);
}

TwoQuditProbabilities heralded_two_qudit_probabilities(const EncodingSolution& bell,
                                                       double indistinguishability,
                                                       const Matrix& rotation1,
                                                       const Matrix& rotation2) {
  if (bell.n_qudits != 2) throw std::invalid_argument("needs an N = 2 solution");
  const int d = bell.dimension;
  const int m = bell.n_modes;
  if (rotation1.rows() != d || rotation2.rows() != d)
    throw std::invalid_argument("rotations must be d x d");

  Matrix total = embed(rotation1, bell.qudit_registers[0], m) *
                 embed(rotation2, bell.qudit_registers[1], m) * dft(m);
  Matrix overlap = uniform_overlap(m, indistinguishability);
  ModeOccupation input(std::vector<int>(m, 1));

  Eigen::MatrixXd joint(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      ModeOccupation out(std::vector<int>(m, 0));
      out.counts[0] = m - 2;
      ++out.counts[bell.qudit_registers[0][k]];
      ++out.counts[bell.qudit_registers[1][l]];
      joint(k, l) = tichy_probability(total, input, out, overlap);
    }
  }
  double marginal = joint.sum();
  if (marginal <= 1e-300) throw NumericError("herald pattern carries no probability");
  TwoQuditProbabilities result;
  result.conditional = joint / marginal;
  result.herald_marginal = marginal;
  return result;
}

DistinguishabilityPoint distinguishability_point(int d, double indistinguishability,
                                                 int threads) {
  EncodingSolution bell = bell_family_solution(d);
  GeneratorSet gens = gell_mann(d);
  const int n_gen = d * d;

  std::vector<Matrix> rotations(n_gen);
  std::vector<Eigen::VectorXd> eigenvalues(n_gen);
  for (int i = 0; i < n_gen; ++i) {
    Eigen::VectorXd evals;
    rotations[i] = generator_rotation(gens.generators[i], &evals);
    eigenvalues[i] = evals;
  }

  // <G_i (x) G_j> from the conditional outcome distributions
  Eigen::MatrixXd expectations(n_gen, n_gen);
  parallel_slices(static_cast<std::size_t>(n_gen) * n_gen, threads,
                  [&](int, std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      int i = static_cast<int>(idx) / n_gen;
      int j = static_cast<int>(idx) % n_gen;
      auto probs = heralded_two_qudit_probabilities(bell, indistinguishability,
                                                    rotations[i], rotations[j]);
      double expect = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          expect += eigenvalues[i](k) * eigenvalues[j](l) * probs.conditional(k, l);
      expectations(i, j) = expect;
    }
  });

  Matrix rho = reconstruct_two_qudit(expectations, d);

  Matrix ideal = Matrix::Zero(d * d, d * d);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int k = 0; k < d; ++k) psi(k * d + k) = Complex(1.0 / std::sqrt(d), 0.0);
  ideal = psi * psi.adjoint();

  DistinguishabilityPoint point;
  point.fidelity = fidelity(rho, ideal);
  point.log_negativity = log_negativity(rho, d, d);
  return point;
}

}  // namespace qforge
