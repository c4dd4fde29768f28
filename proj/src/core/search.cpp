#include "core/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace qforge {

namespace {

// Allocation-free GHZ condition check for tight subset scans. Enumerates the
// ZTL branch set with pruning and stops as soon as the conditions are settled.
class GhzChecker {
 public:
  GhzChecker(int n_qudits, int dimension, int m)
      : n_(n_qudits), d_(dimension), m_(m), mark_(m, 0) {}

  // modes must be sorted ascending, distinct, within 1..m-1, size N*d.
  bool operator()(const std::vector<int>& modes) {
    modes_ = &modes;
    count_ = 0;
    ok_ = true;
    recurse(0, n_, 0);
    if (!ok_ || count_ != d_) return false;
    // All branch elements distinct <=> they exhaust the N*d modes.
    ++epoch_;
    for (int i = 0; i < count_ * n_; ++i) {
      int mode = elems_[i];
      if (mark_[mode] == epoch_) return false;
      mark_[mode] = epoch_;
    }
    return true;
  }

 private:
  void recurse(std::size_t start, int slots, long long sum) {
    if (!ok_) return;
    const auto& modes = *modes_;
    if (slots == 0) {
      if (sum % m_ == 0) {
        if (sum != m_ || count_ == d_) {
          ok_ = false;  // wrong sum (condition 3) or too many branches
          return;
        }
        std::memcpy(&elems_[count_ * n_], stack_, sizeof(int) * n_);
        ++count_;
      }
      return;
    }
    long long tail_max = static_cast<long long>(slots) * modes.back();
    for (std::size_t i = start; i < modes.size(); ++i) {
      long long lo = sum + static_cast<long long>(slots) * modes[i];
      if ((lo + m_ - 1) / m_ * m_ > sum + tail_max) break;
      stack_[n_ - slots] = modes[i];
      recurse(i, slots - 1, sum + modes[i]);
      if (!ok_) return;
    }
  }

  int n_, d_, m_;
  const std::vector<int>* modes_ = nullptr;
  int stack_[16];
  int elems_[16 * 16];
  int count_ = 0;
  bool ok_ = true;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
};

// Colex successor over the first `count` entries of a sorted subset, values in
// {1..limit}; returns false after the last subset.
bool next_colex_prefix(std::vector<int>& subset, int count, int limit) {
  for (int i = 0; i < count; ++i) {
    int cap = (i + 1 < count) ? subset[i + 1] - 1 : limit;
    if (subset[i] < cap) {
      ++subset[i];
      for (int j = 0; j < i; ++j) subset[j] = j + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> random_subset_pool(int k, int m, long long budget,
                                                 std::uint64_t seed) {
  std::set<std::vector<int>> tried;
  std::vector<std::vector<int>> pool;
  auto rng = substream(seed, 0);
  BigInt space = binomial(m - 1, k);
  long long target = budget;
  if (space <= budget) target = static_cast<long long>(space);
  std::vector<int> universe(m - 1);
  std::iota(universe.begin(), universe.end(), 1);
  long long attempts = 0;
  const long long attempt_cap = 64 * budget + 1024;
  while (static_cast<long long>(pool.size()) < target && attempts < attempt_cap) {
    ++attempts;
    // partial Fisher-Yates draw of k distinct values
    for (int i = 0; i < k; ++i) {
      std::size_t j = i + uniform_below(rng, universe.size() - i);
      std::swap(universe[i], universe[j]);
    }
    std::vector<int> subset(universe.begin(), universe.begin() + k);
    std::sort(subset.begin(), subset.end());
    if (tried.insert(subset).second) pool.push_back(std::move(subset));
  }
  return pool;
}

}  // namespace

std::vector<std::vector<int>> find_witnesses_at_m(int n_qudits, int dimension, int m,
                                                  const SearchConfig& config,
                                                  bool first_only) {
  const int k = n_qudits * dimension;
  if (k > 16) throw TooLargeError("subset search supports N*d <= 16");
  if (m <= k) return {};

  if (config.mode == SearchConfig::Mode::Random) {
    auto pool = random_subset_pool(k, m, config.random_subset_budget, config.seed);
    std::vector<std::uint8_t> valid(pool.size(), 0);
    parallel_slices(pool.size(), config.threads, [&](int, std::size_t begin, std::size_t end) {
      GhzChecker check(n_qudits, dimension, m);
      for (std::size_t i = begin; i < end; ++i) valid[i] = check(pool[i]) ? 1 : 0;
    });
    std::vector<std::vector<int>> witnesses;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!valid[i]) continue;
      witnesses.push_back(std::move(pool[i]));
      if (first_only) break;
    }
    return witnesses;
  }

  // Exhaustive colex scan, parallel over the largest element. Stripe L holds
  // the subsets whose maximum is L, so ascending stripes give colex order.
  const int n_stripes = m - k;  // L = k .. m-1
  std::vector<std::vector<std::vector<int>>> per_stripe(n_stripes);
  std::atomic<int> next_stripe{0};
  std::atomic<int> best_stripe{n_stripes};
  parallel_slices(static_cast<std::size_t>(resolve_threads(config.threads)), config.threads,
                  [&](int, std::size_t, std::size_t) {
                    GhzChecker check(n_qudits, dimension, m);
                    std::vector<int> subset(k);
                    for (;;) {
                      int stripe = next_stripe.fetch_add(1);
                      if (stripe >= n_stripes) return;
                      if (first_only && stripe > best_stripe.load()) continue;
                      int largest = k + stripe;
                      std::iota(subset.begin(), subset.end() - 1, 1);
                      subset[k - 1] = largest;
                      for (;;) {
                        if (check(subset)) {
                          per_stripe[stripe].push_back(subset);
                          if (first_only) {
                            int expect = best_stripe.load();
                            while (stripe < expect &&
                                   !best_stripe.compare_exchange_weak(expect, stripe)) {
                            }
                            break;
                          }
                        }
                        if (!next_colex_prefix(subset, k - 1, largest - 1)) break;
                      }
                    }
                  });

  std::vector<std::vector<int>> witnesses;
  for (auto& stripe : per_stripe) {
    for (auto& w : stripe) {
      witnesses.push_back(std::move(w));
      if (first_only) return witnesses;
    }
  }
  return witnesses;
}

BruteForceResult brute_force_min_m(int n_qudits, int dimension, const SearchConfig& config) {
  const int k = n_qudits * dimension;
  if (config.m_start <= k)
    throw std::invalid_argument("m_start must exceed N*d");

  BruteForceResult result;
  bool found_any = false;
  std::vector<int> best_witness;
  for (int m = config.m_start; m > k; --m) {
    auto witnesses = find_witnesses_at_m(n_qudits, dimension, m, config, true);
    if (witnesses.empty()) {
      if (!found_any) continue;
      result.certified_minimal = config.mode == SearchConfig::Mode::Exhaustive;
      result.m_bar = m + 1;
      result.witness = make_solution(best_witness, n_qudits, dimension, m + 1);
      return result;
    }
    found_any = true;
    best_witness = witnesses.front();
    if (m == k + 1) {
      // nothing below N*d+1 can host N*d distinct non-zero modes
      result.certified_minimal = true;
      result.m_bar = m;
      result.witness = make_solution(best_witness, n_qudits, dimension, m);
      return result;
    }
  }
  throw NotFoundError("no solution found for m in [" + std::to_string(k + 1) + ", " +
                      std::to_string(config.m_start) + "]");
}

std::vector<int> dsi_stage1(int n_qudits, int dimension) {
  if (n_qudits < 2 || dimension < 2)
    throw std::invalid_argument("need N >= 2 and d >= 2");
  const int m_block = n_qudits - 1;
  const int target_size = m_block * dimension;

  std::vector<int> y(m_block);
  std::iota(y.begin(), y.end(), 1);

  // sums[k] = sums of k-element multisets over y, k = 0..m_block
  std::vector<std::set<long long>> sums(m_block + 1);
  sums[0].insert(0);
  for (int k = 1; k <= m_block; ++k) {
    for (long long base : sums[k - 1])
      for (int v : y) sums[k].insert(base + v);
  }

  while (static_cast<int>(y.size()) < target_size) {
    std::set<long long> gamma;
    for (long long top : sums[m_block])
      for (long long sub : sums[m_block - 1])
        if (top - sub > 0) gamma.insert(top - sub);
    long long candidate = 1;
    std::set<long long> members(y.begin(), y.end());
    while (gamma.count(candidate) || members.count(candidate)) ++candidate;

    y.push_back(static_cast<int>(candidate));
    sums[1].insert(candidate);
    for (int k = 2; k <= m_block; ++k) {
      std::vector<long long> additions;
      additions.reserve(sums[k - 1].size());
      for (long long base : sums[k - 1]) additions.push_back(base + candidate);
      sums[k].insert(additions.begin(), additions.end());
    }
  }
  return y;
}

namespace {

// Multiset-sum occurrence tables over the stage-1 set: counts[k][v] is the
// number of k-element multisets (with repetition) summing to v, capped at 2.
std::vector<std::vector<std::uint8_t>> multiset_sum_counts(const std::vector<int>& y,
                                                           int max_k) {
  int max_y = *std::max_element(y.begin(), y.end());
  std::vector<std::vector<std::uint8_t>> counts(max_k + 1);
  counts[0].assign(1, 1);
  for (int k = 1; k <= max_k; ++k) counts[k].assign(static_cast<std::size_t>(k) * max_y + 1, 0);

  // DP over items, counts capped so saturation is preserved
  std::vector<std::vector<std::uint32_t>> table(max_k + 1);
  table[0].assign(1, 1);
  for (int k = 1; k <= max_k; ++k) table[k].assign(static_cast<std::size_t>(k) * max_y + 1, 0);
  for (int item : y) {
    for (int k = 0; k < max_k; ++k) {
      for (std::size_t v = 0; v < table[k].size(); ++v) {
        std::uint32_t c = table[k][v];
        if (c == 0) continue;
        std::size_t nv = v + static_cast<std::size_t>(item);
        if (nv < table[k + 1].size()) {
          std::uint32_t& slot = table[k + 1][nv];
          slot = std::min<std::uint32_t>(3, slot + c);
        }
      }
    }
  }
  for (int k = 0; k <= max_k; ++k)
    for (std::size_t v = 0; v < table[k].size(); ++v)
      counts[k][v] = static_cast<std::uint8_t>(std::min<std::uint32_t>(2, table[k][v]));
  return counts;
}

// Canonical partition order: each block anchors on the smallest unused
// element, partners chosen in ascending order, blocks emitted left to right.
class PartitionEnumerator {
 public:
  PartitionEnumerator(const std::vector<int>& y, int block_size, int n_blocks,
                      std::vector<std::uint32_t>& out)
      : y_(y), block_size_(block_size), n_blocks_(n_blocks),
        used_(y.size(), 0), sigma_(n_blocks, 0), out_(out) {}

  void run() { next_block(0); }

 private:
  void next_block(int block) {
    if (block == n_blocks_) {
      if (out_.size() > 400'000'000)
        throw TooLargeError("partition enumeration exceeds the supported size");
      out_.insert(out_.end(), sigma_.begin(), sigma_.end());
      return;
    }
    std::size_t anchor = 0;
    while (used_[anchor]) ++anchor;
    used_[anchor] = 1;
    fill(block, 1, anchor + 1, y_[anchor]);
    used_[anchor] = 0;
  }

  void fill(int block, int depth, std::size_t start, long long sum) {
    if (depth == block_size_) {
      sigma_[block] = static_cast<std::uint32_t>(sum);
      next_block(block + 1);
      return;
    }
    for (std::size_t i = start; i < y_.size(); ++i) {
      if (used_[i]) continue;
      used_[i] = 1;
      fill(block, depth + 1, i + 1, sum + y_[i]);
      used_[i] = 0;
    }
  }

  const std::vector<int>& y_;
  int block_size_, n_blocks_;
  std::vector<std::uint8_t> used_;
  std::vector<std::uint32_t> sigma_;
  std::vector<std::uint32_t>& out_;
};

}  // namespace

DsiResult dsi_solve(int n_qudits, int dimension, int m_max, int threads) {
  const int n = n_qudits;
  const int d = dimension;
  std::vector<int> y = dsi_stage1(n, d);
  const int max_y = y.back();
  if (m_max <= max_y)
    throw NotFoundError("m_max does not exceed the stage-1 maximum " + std::to_string(max_y));

  auto counts = multiset_sum_counts(y, n);
  const auto& full_counts = counts[n];  // sums of N-element multisets of Y

  std::vector<std::uint32_t> sigmas;
  PartitionEnumerator(y, n - 1, d, sigmas).run();
  const std::size_t n_partitions = sigmas.size() / d;

  std::vector<std::uint8_t> in_y(max_y + 1, 0);
  for (int v : y) in_y[v] = 1;

  // completion-index multisets for branches holding j >= 2 completions
  std::vector<std::vector<std::vector<int>>> combos(n + 1);
  for (int j = 2; j <= n; ++j) {
    std::vector<int> tuple(j, 0);
    for (;;) {
      combos[j].push_back(tuple);
      int i = j - 1;
      while (i >= 0 && tuple[i] == d - 1) --i;
      if (i < 0) break;
      int next = tuple[i] + 1;
      for (int t = i; t < j; ++t) tuple[t] = next;
    }
  }

  for (int m = max_y + 1; m <= m_max; ++m) {
    // any multiple of m realized by encoding modes alone kills every candidate
    bool dead = false;
    for (long long v = m; v < static_cast<long long>(full_counts.size()); v += m)
      if (full_counts[v]) {
        dead = true;
        break;
      }
    if (dead) continue;

    std::vector<std::vector<std::size_t>> hits_per_worker(resolve_threads(threads));
    parallel_slices(n_partitions, threads, [&](int worker, std::size_t begin, std::size_t end) {
      auto& hits = hits_per_worker[worker];
      for (std::size_t p = begin; p < end; ++p) {
        const std::uint32_t* sigma = sigmas.data() + p * d;
        bool bad = false;
        for (int i = 0; i < d && !bad; ++i) {
          if (sigma[i] >= static_cast<std::uint32_t>(m)) bad = true;  // completion <= 0
          else if (in_y[m - sigma[i]]) bad = true;                    // completion collides
        }
        // a second multiset hitting sigma_i (mod m) adds a branch
        const auto& cnt1 = counts[n - 1];
        for (int i = 0; i < d && !bad; ++i) {
          if (cnt1[sigma[i]] >= 2) bad = true;
          for (long long v = sigma[i] + m; !bad && v < static_cast<long long>(cnt1.size());
               v += m)
            if (cnt1[v]) bad = true;
        }
        for (int j = 2; j <= n && !bad; ++j) {
          const int k = n - j;
          const auto& cnt = counts[k];
          for (const auto& tuple : combos[j]) {
            long long total = 0;
            for (int idx : tuple) total += sigma[idx];
            if (k == 0) {
              if (total % m == 0) {
                bad = true;
                break;
              }
              continue;
            }
            long long hi = static_cast<long long>(cnt.size()) - 1;
            long long t0 = std::max<long long>(0, (total - hi + m - 1) / m);
            for (long long v = total - t0 * m; v >= k; v -= m) {
              if (cnt[v]) {
                bad = true;
                break;
              }
            }
            if (bad) break;
          }
        }
        if (!bad) hits.push_back(p);
      }
    });

    std::vector<std::size_t> hits;
    for (auto& h : hits_per_worker) hits.insert(hits.end(), h.begin(), h.end());
    std::sort(hits.begin(), hits.end());
    for (std::size_t p : hits) {
      const std::uint32_t* sigma = sigmas.data() + p * d;
      std::vector<int> modes(y);
      for (int i = 0; i < d; ++i) modes.push_back(m - static_cast<int>(sigma[i]));
      std::sort(modes.begin(), modes.end());
      auto report = check_ghz_conditions(modes, n, d, m);
      if (!report.valid()) continue;  // filter is necessary-only; keep scanning
      DsiResult result;
      result.m = m;
      result.solution = make_solution(modes, n, d, m);
      result.stage1_set = y;
      return result;
    }
  }
  throw NotFoundError("DSI found no solution with m <= " + std::to_string(m_max));
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> pts(points);
  std::sort(pts.begin(), pts.end());
  std::vector<double> xs, ys;
  for (auto& [x, y] : pts) {
    if (x <= 0) throw std::invalid_argument("power-law fit needs positive abscissas");
    xs.push_back(x);
    ys.push_back(y);
  }
  std::set<double> distinct(xs.begin(), xs.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("power-law fit needs at least three distinct points");

  const std::size_t count = xs.size();
  double alpha = 2.0;
  double denom = std::pow(xs.back(), alpha) - std::pow(xs.front(), alpha);
  double beta = std::abs(denom) > 1e-12 ? (ys.back() - ys.front()) / denom : 1.0;
  double gamma = 0.0;

  auto residuals = [&](double a, double b, double g, Eigen::VectorXd& r) {
    for (std::size_t i = 0; i < count; ++i)
      r(static_cast<Eigen::Index>(i)) = ys[i] - (g + b * std::pow(xs[i], a));
  };

  Eigen::VectorXd r(count);
  residuals(alpha, beta, gamma, r);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (int iter = 0; iter < 400; ++iter) {
    Eigen::MatrixXd jac(count, 3);
    for (std::size_t i = 0; i < count; ++i) {
      double p = std::pow(xs[i], alpha);
      jac(static_cast<Eigen::Index>(i), 0) = -beta * p * std::log(xs[i]);
      jac(static_cast<Eigen::Index>(i), 1) = -p;
      jac(static_cast<Eigen::Index>(i), 2) = -1.0;
    }
    Eigen::Matrix3d normal = jac.transpose() * jac;
    Eigen::Vector3d grad = jac.transpose() * r;
    Eigen::Matrix3d ridge = normal.diagonal().asDiagonal();
    Eigen::Matrix3d damped = normal + lambda * ridge;
    Eigen::Vector3d step = damped.ldlt().solve(-grad);
    if (!step.allFinite()) throw NumericError("power-law fit diverged");

    double na = alpha + step(0), nb = beta + step(1), ng = gamma + step(2);
    Eigen::VectorXd nr(count);
    residuals(na, nb, ng, nr);
    double ncost = nr.squaredNorm();
    if (ncost < cost) {
      alpha = na;
      beta = nb;
      gamma = ng;
      r = nr;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (std::abs(cost - ncost) <= 1e-14 * (1.0 + cost) && step.norm() < 1e-10) {
        cost = ncost;
        break;
      }
      cost = ncost;
    } else {
      lambda *= 3.0;
      if (lambda > 1e12) break;
    }
  }

  PowerLawFit fit;
  fit.alpha = alpha;
  fit.beta = beta;
  fit.gamma = gamma;
  fit.residual = std::sqrt(cost / static_cast<double>(count));
  return fit;
}

}  // namespace qforge
