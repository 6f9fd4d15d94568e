#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace oscillax {

/// Worker count: hardware concurrency capped by the OSCILLAX_THREADS
/// environment variable. `override_count` > 0 forces a specific count.
inline int worker_count(int override_count = 0) {
  if (override_count > 0) return override_count;
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("OSCILLAX_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

/// Runs fn(i) for i in [0, count). Work is split into fixed contiguous
/// chunks, so any value an item writes to its own slot is deterministic;
/// reductions must be done by the caller in slot order afterwards.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         int threads = 0) {
  const int nw = std::min<std::size_t>(worker_count(threads), count ? count : 1);
  if (nw <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const std::size_t chunk = (count + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace oscillax
