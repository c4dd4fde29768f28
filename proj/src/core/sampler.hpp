#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/fock.hpp"
#include "core/rng.hpp"
#include "core/unitary.hpp"

namespace qforge {

// Exact single-shot sampling from the output distribution of `input` photons
// through `u`, one photon at a time. Each sample draws a fresh uniformly
// random column order and then samples output modes from chain-rule
// conditionals whose weights are squared permanents of the growing submatrix;
// the k-th step evaluates all column-deleted minors of a (k-1) x k matrix in
// one Glynn-type pass, so a full sample costs O(n 2^n + m n^2).
class BosonSampler {
 public:
  BosonSampler(const Matrix& u, const ModeOccupation& input);

  int mode_count() const { return m_; }
  int photon_count() const { return n_; }

  struct Workspace {
    std::vector<int> order;
    std::vector<double> b_re, b_im;        // step submatrix, row-major
    std::vector<double> sum_re, sum_im;    // column sums under the sign vector
    std::vector<double> pre_re, pre_im;    // prefix products
    std::vector<double> g_re, g_im;        // column-deleted minors
    std::vector<double> weight;            // per-mode pmf
  };

  PhotonConfiguration sample(std::mt19937_64& rng) const;

  // keep_going(mode) is invoked after each placed photon; returning false
  // abandons the sample (used to discard samples that can no longer pass a
  // caller-side acceptance test). Photons placed so far are in modes_out.
  template <typename F>
  bool sample_into(std::mt19937_64& rng, Workspace& ws, std::vector<int>& modes_out,
                   F&& keep_going) const;

 private:
  void prepare(Workspace& ws) const;
  void step_minors(Workspace& ws, const std::vector<int>& chosen, int k) const;
  int draw_mode(std::mt19937_64& rng, Workspace& ws, int k) const;

  int m_ = 0;
  int n_ = 0;
  std::vector<double> a_re_, a_im_;  // m x n, column-major (input-expanded)
};

PhotonConfiguration sample_output(const Matrix& u, const ModeOccupation& input,
                                  std::mt19937_64& rng);

template <typename F>
bool BosonSampler::sample_into(std::mt19937_64& rng, Workspace& ws,
                               std::vector<int>& modes_out, F&& keep_going) const {
  prepare(ws);
  modes_out.clear();
  // uniformly random column order
  for (int i = 0; i < n_; ++i) ws.order[i] = i;
  for (int i = n_ - 1; i > 0; --i) {
    int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(ws.order[i], ws.order[j]);
  }
  for (int k = 1; k <= n_; ++k) {
    step_minors(ws, modes_out, k);
    int mode = draw_mode(rng, ws, k);
    modes_out.push_back(mode);
    if (!keep_going(mode)) return false;
  }
  return true;
}

}  // namespace qforge
