#include "core/sampler.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/permanent.hpp"
#include "core/rng.hpp"

namespace qforge {

BosonSampler::BosonSampler(const Matrix& u, const ModeOccupation& input) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
  if (input.mode_count() != u.rows())
    throw std::invalid_argument("input length must match the unitary dimension");
  m_ = static_cast<int>(u.rows());
  n_ = input.photon_count();
  if (n_ > permanent_ceiling())
    throw TooLargeError("photon number exceeds the permanent ceiling");
  a_re_.resize(static_cast<std::size_t>(m_) * n_);
  a_im_.resize(a_re_.size());
  int col = 0;
  for (int mode = 0; mode < m_; ++mode) {
    for (int rep = 0; rep < input.counts[mode]; ++rep, ++col) {
      for (int r = 0; r < m_; ++r) {
        a_re_[static_cast<std::size_t>(col) * m_ + r] = u(r, mode).real();
        a_im_[static_cast<std::size_t>(col) * m_ + r] = u(r, mode).imag();
      }
    }
  }
}

void BosonSampler::prepare(Workspace& ws) const {
  ws.order.resize(n_);
  ws.b_re.resize(static_cast<std::size_t>(n_) * n_);
  ws.b_im.resize(ws.b_re.size());
  ws.sum_re.resize(n_ + 1);
  ws.sum_im.resize(n_ + 1);
  ws.pre_re.resize(n_ + 2);
  ws.pre_im.resize(n_ + 2);
  ws.g_re.resize(n_ + 1);
  ws.g_im.resize(n_ + 1);
  ws.weight.resize(m_);
}

// All column-deleted permanents of the (k-1) x k matrix whose rows are the
// chosen output modes and whose columns are the first k permuted inputs.
// Glynn formula over row-sign vectors with the leading sign fixed, one sign
// flipped per Gray step; the product over surviving columns is split into
// prefix products and a running suffix.
void BosonSampler::step_minors(Workspace& ws, const std::vector<int>& chosen, int k) const {
  double* g_re = ws.g_re.data();
  double* g_im = ws.g_im.data();
  if (k == 1) {
    g_re[0] = 1.0;
    g_im[0] = 0.0;
    return;
  }
  const int rows = k - 1;
  double* b_re = ws.b_re.data();
  double* b_im = ws.b_im.data();
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < k; ++c) {
      std::size_t src = static_cast<std::size_t>(ws.order[c]) * m_ + chosen[i];
      b_re[static_cast<std::size_t>(i) * k + c] = a_re_[src];
      b_im[static_cast<std::size_t>(i) * k + c] = a_im_[src];
    }
  }

  double* sum_re = ws.sum_re.data();
  double* sum_im = ws.sum_im.data();
  for (int c = 0; c < k; ++c) {
    double sr = 0, si = 0;
    for (int i = 0; i < rows; ++i) {
      sr += b_re[static_cast<std::size_t>(i) * k + c];
      si += b_im[static_cast<std::size_t>(i) * k + c];
    }
    sum_re[c] = sr;
    sum_im[c] = si;
  }
  for (int c = 0; c < k; ++c) {
    g_re[c] = 0.0;
    g_im[c] = 0.0;
  }

  double* pre_re = ws.pre_re.data();
  double* pre_im = ws.pre_im.data();
  const std::uint64_t steps = rows >= 2 ? (1ULL << (rows - 1)) : 1;
  double sign = 1.0;
  std::uint64_t neg_mask = 0;  // bit b set <=> sign of row b+1 is currently -1
  for (std::uint64_t t = 0;;) {
    pre_re[0] = sign;
    pre_im[0] = 0.0;
    for (int c = 0; c < k; ++c) {
      pre_re[c + 1] = pre_re[c] * sum_re[c] - pre_im[c] * sum_im[c];
      pre_im[c + 1] = pre_re[c] * sum_im[c] + pre_im[c] * sum_re[c];
    }
    double suf_re = 1.0, suf_im = 0.0;
    for (int c = k - 1; c >= 0; --c) {
      g_re[c] += pre_re[c] * suf_re - pre_im[c] * suf_im;
      g_im[c] += pre_re[c] * suf_im + pre_im[c] * suf_re;
      double nr = suf_re * sum_re[c] - suf_im * sum_im[c];
      suf_im = suf_re * sum_im[c] + suf_im * sum_re[c];
      suf_re = nr;
    }

    if (++t >= steps) break;
    int bit = std::countr_zero(t);
    int row = 1 + bit;
    neg_mask ^= 1ULL << bit;
    double dir = (neg_mask >> bit) & 1 ? -2.0 : 2.0;
    const double* row_re = b_re + static_cast<std::size_t>(row) * k;
    const double* row_im = b_im + static_cast<std::size_t>(row) * k;
    for (int c = 0; c < k; ++c) {
      sum_re[c] += dir * row_re[c];
      sum_im[c] += dir * row_im[c];
    }
    sign = -sign;
  }

  if (rows >= 2) {
    double scale = std::ldexp(1.0, -(rows - 1));
    for (int c = 0; c < k; ++c) {
      g_re[c] *= scale;
      g_im[c] *= scale;
    }
  }
}

int BosonSampler::draw_mode(std::mt19937_64& rng, Workspace& ws, int k) const {
  const double* g_re = ws.g_re.data();
  const double* g_im = ws.g_im.data();
  double total = 0.0;
  for (int r = 0; r < m_; ++r) {
    double ar = 0.0, ai = 0.0;
    for (int c = 0; c < k; ++c) {
      std::size_t idx = static_cast<std::size_t>(ws.order[c]) * m_ + r;
      double re = a_re_[idx], im = a_im_[idx];
      ar += re * g_re[c] - im * g_im[c];
      ai += re * g_im[c] + im * g_re[c];
    }
    double w = ar * ar + ai * ai;
    ws.weight[r] = w;
    total += w;
  }
  if (!(total > 0.0)) throw NumericError("degenerate sampling weights");
  double u = uniform01(rng) * total;
  double acc = 0.0;
  for (int r = 0; r < m_; ++r) {
    acc += ws.weight[r];
    if (u < acc) return r;
  }
  return m_ - 1;
}

PhotonConfiguration BosonSampler::sample(std::mt19937_64& rng) const {
  Workspace ws;
  std::vector<int> modes;
  modes.reserve(n_);
  sample_into(rng, ws, modes, [](int) { return true; });
  return PhotonConfiguration(std::move(modes), m_);
}

PhotonConfiguration sample_output(const Matrix& u, const ModeOccupation& input,
                                  std::mt19937_64& rng) {
  BosonSampler sampler(u, input);
  return sampler.sample(rng);
}

}  // namespace qforge
