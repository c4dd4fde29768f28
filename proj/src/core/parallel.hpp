#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qforge {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(worker, begin, end) on `threads` workers over contiguous slices of
// [0, count). Slice boundaries depend only on (count, threads), so any
// per-worker accumulation the caller merges in worker order is deterministic.
template <typename F>
void parallel_slices(std::size_t count, int threads, F&& fn) {
  int n_workers = resolve_threads(threads);
  if (count == 0) return;
  n_workers = static_cast<int>(std::min<std::size_t>(n_workers, count));
  if (n_workers == 1) {
    fn(0, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_workers);
  std::size_t chunk = count / n_workers;
  std::size_t extra = count % n_workers;
  std::size_t begin = 0;
  for (int w = 0; w < n_workers; ++w) {
    std::size_t len = chunk + (static_cast<std::size_t>(w) < extra ? 1 : 0);
    std::size_t end = begin + len;
    pool.emplace_back([&fn, &errors, w, begin, end]() {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qforge
