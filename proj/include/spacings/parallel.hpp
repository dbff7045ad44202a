#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace spacings {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(lo, hi) over a disjoint partition of [0, total). Workers write to
// disjoint index ranges chosen from (total, threads) alone, so any result
// that is a pure function of the index is identical for every thread count.
// The first worker exception, if any, is rethrown on the calling thread.
inline void parallel_blocks(long total, int threads,
                            const std::function<void(long, long)>& fn) {
  threads = resolve_threads(threads);
  if (total <= 0) return;
  if (threads <= 1 || total == 1) {
    fn(0, total);
    return;
  }
  long nblocks = std::min<long>(threads, total);
  long chunk = (total + nblocks - 1) / nblocks;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(nblocks));
  pool.reserve(static_cast<size_t>(nblocks));
  for (long b = 0; b < nblocks; ++b) {
    long lo = b * chunk;
    long hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, &errors, b, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[static_cast<size_t>(b)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace spacings
