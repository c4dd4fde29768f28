#include "core/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"

namespace qforge {

int permanent_ceiling() {
  static const int ceiling = [] {
    if (const char* env = std::getenv("QF_PERMANENT_CEILING")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 30;
  }();
  return ceiling;
}

namespace {

// Compensated complex accumulator (Kahan).
struct KahanSum {
  double re = 0, im = 0, cre = 0, cim = 0;

  void add(double r, double i) {
    double yr = r - cre;
    double tr = re + yr;
    cre = (tr - re) - yr;
    re = tr;
    double yi = i - cim;
    double ti = im + yi;
    cim = (ti - im) - yi;
    im = ti;
  }

  Complex value() const { return {re, im}; }
};

void check_ceiling(Eigen::Index n) {
  if (n > permanent_ceiling())
    throw TooLargeError("matrix dimension " + std::to_string(n) +
                        " exceeds permanent ceiling " + std::to_string(permanent_ceiling()));
}

}  // namespace

Complex permanent(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent needs a square matrix");
  const int n = static_cast<int>(a.rows());
  check_ceiling(n);
  if (n == 0) return {1.0, 0.0};

  // Row sums over the current column subset, updated one Gray flip at a time.
  std::vector<double> sum_re(n, 0.0), sum_im(n, 0.0);
  // Column-major copies for contiguous access in the flip update.
  std::vector<double> col_re(static_cast<std::size_t>(n) * n), col_im(col_re.size());
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      col_re[static_cast<std::size_t>(c) * n + r] = a(r, c).real();
      col_im[static_cast<std::size_t>(c) * n + r] = a(r, c).imag();
    }

  KahanSum acc;
  const std::uint64_t end = 1ULL << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < end; ++k) {
    std::uint64_t next = k ^ (k >> 1);
    std::uint64_t changed = gray ^ next;
    int col = std::countr_zero(changed);
    double sign = (next & changed) ? 1.0 : -1.0;
    const double* cr = col_re.data() + static_cast<std::size_t>(col) * n;
    const double* ci = col_im.data() + static_cast<std::size_t>(col) * n;
    for (int r = 0; r < n; ++r) {
      sum_re[r] += sign * cr[r];
      sum_im[r] += sign * ci[r];
    }
    gray = next;

    double pr = 1.0, pi = 0.0;
    for (int r = 0; r < n; ++r) {
      double nr = pr * sum_re[r] - pi * sum_im[r];
      pi = pr * sum_im[r] + pi * sum_re[r];
      pr = nr;
    }
    // (-1)^{n - |S|}
    if ((n - std::popcount(next)) & 1) {
      acc.add(-pr, -pi);
    } else {
      acc.add(pr, pi);
    }
  }
  return acc.value();
}

Complex permanent_naive(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent needs a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {1.0, 0.0};
  if (n > 10) throw TooLargeError("naive permanent limited to n <= 10");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0;
  do {
    Complex term = 1;
    for (int i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Complex permanent_repeated(const Matrix& compact, const std::vector<int>& row_mult,
                           const std::vector<int>& col_mult) {
  const int rows = static_cast<int>(compact.rows());
  const int cols = static_cast<int>(compact.cols());
  if (rows != static_cast<int>(row_mult.size()) || cols != static_cast<int>(col_mult.size()))
    throw std::invalid_argument("multiplicity lengths must match the compact matrix");
  long long n_rows = 0, n_cols = 0;
  for (int s : row_mult) {
    if (s < 1) throw std::invalid_argument("row multiplicities must be positive");
    n_rows += s;
  }
  for (int t : col_mult) {
    if (t < 1) throw std::invalid_argument("column multiplicities must be positive");
    n_cols += t;
  }
  if (n_rows != n_cols) throw std::invalid_argument("total row and column counts differ");
  const int n = static_cast<int>(n_rows);
  check_ceiling(n);
  if (n == 0) return {1.0, 0.0};

  // binomial(row_mult[r], j) lookup per row
  std::vector<std::vector<double>> binom(rows);
  for (int r = 0; r < rows; ++r) {
    binom[r].resize(row_mult[r] + 1);
    binom[r][0] = 1.0;
    for (int j = 1; j <= row_mult[r]; ++j)
      binom[r][j] = binom[r][j - 1] * (row_mult[r] - j + 1) / j;
  }

  // Row-major copies; a Gray step touches one full row.
  std::vector<double> row_re(static_cast<std::size_t>(rows) * cols), row_im(row_re.size());
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      row_re[static_cast<std::size_t>(r) * cols + c] = compact(r, c).real();
      row_im[static_cast<std::size_t>(r) * cols + c] = compact(r, c).imag();
    }

  // Weighted column sums, all rows starting at weight row_mult[r] (j_r = 0).
  std::vector<double> sum_re(cols, 0.0), sum_im(cols, 0.0);
  for (int c = 0; c < cols; ++c) {
    double sr = 0, si = 0;
    for (int r = 0; r < rows; ++r) {
      sr += row_mult[r] * compact(r, c).real();
      si += row_mult[r] * compact(r, c).imag();
    }
    sum_re[c] = sr;
    sum_im[c] = si;
  }

  std::vector<int> digit(rows, 0);
  double coeff = 1.0;  // prod_r (-1)^{j_r} binom(s_r, j_r)

  // Reflected mixed-radix Gray code (focus pointers); one digit moves per step.
  std::vector<int> focus(rows + 1);
  std::iota(focus.begin(), focus.end(), 0);
  std::vector<int> dir(rows, 1);

  KahanSum acc;
  for (;;) {
    double pr = coeff, pi = 0.0;
    for (int c = 0; c < cols; ++c) {
      for (int t = 0; t < col_mult[c]; ++t) {
        double nr = pr * sum_re[c] - pi * sum_im[c];
        pi = pr * sum_im[c] + pi * sum_re[c];
        pr = nr;
      }
    }
    acc.add(pr, pi);

    int j = focus[0];
    focus[0] = 0;
    if (j == rows) break;
    int old = digit[j];
    digit[j] = old + dir[j];
    coeff *= -binom[j][digit[j]] / binom[j][old];
    double delta = -2.0 * dir[j];  // w_j = s_j - 2 j_j
    const double* rr = row_re.data() + static_cast<std::size_t>(j) * cols;
    const double* ri = row_im.data() + static_cast<std::size_t>(j) * cols;
    for (int c = 0; c < cols; ++c) {
      sum_re[c] += delta * rr[c];
      sum_im[c] += delta * ri[c];
    }
    if (digit[j] == 0 || digit[j] == row_mult[j]) {
      dir[j] = -dir[j];
      focus[j] = focus[j + 1];
      focus[j + 1] = j + 1;
    }
  }

  double scale = std::ldexp(1.0, -n);  // 1 / 2^n
  Complex total = acc.value();
  return {total.real() * scale, total.imag() * scale};
}

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

ScatteringAmplitude output_amplitude(const Matrix& u, const ModeOccupation& input,
                                     const ModeOccupation& output) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
  if (input.mode_count() != u.rows() || output.mode_count() != u.rows())
    throw std::invalid_argument("occupation length must match the unitary dimension");
  const int n = input.photon_count();
  if (n != output.photon_count())
    throw std::invalid_argument("input and output photon numbers differ");
  check_ceiling(n);
  if (n == 0) return {Complex(1.0, 0.0)};

  std::vector<int> in_modes, in_mult, out_modes, out_mult;
  for (int m = 0; m < input.mode_count(); ++m) {
    if (input.counts[m] > 0) {
      in_modes.push_back(m);
      in_mult.push_back(input.counts[m]);
    }
    if (output.counts[m] > 0) {
      out_modes.push_back(m);
      out_mult.push_back(output.counts[m]);
    }
  }

  Matrix compact(out_modes.size(), in_modes.size());
  for (std::size_t r = 0; r < out_modes.size(); ++r)
    for (std::size_t c = 0; c < in_modes.size(); ++c)
      compact(r, c) = u(out_modes[r], in_modes[c]);

  bool plain = static_cast<int>(out_modes.size()) == n && static_cast<int>(in_modes.size()) == n;
  Complex perm = plain ? permanent(compact) : permanent_repeated(compact, out_mult, in_mult);

  double log_norm = 0.0;
  for (int c : input.counts) log_norm += log_factorial(c);
  for (int c : output.counts) log_norm += log_factorial(c);
  return {perm * std::exp(-0.5 * log_norm)};
}

std::vector<std::pair<PhotonConfiguration, double>> output_distribution(
    const Matrix& u, const ModeOccupation& input, std::uint64_t guard) {
  const int m = static_cast<int>(u.rows());
  const int n = input.photon_count();
  auto outputs = enumerate_outputs(n, m, guard);
  std::vector<std::pair<PhotonConfiguration, double>> dist;
  dist.reserve(outputs.size());
  for (auto& config : outputs) {
    Complex amp = output_amplitude(u, input, to_occupation(config)).value;
    dist.emplace_back(std::move(config), std::norm(amp));
  }
  return dist;
}

}  // namespace qforge
