#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace entrorisk {

// Runs fn(i) for i in [0, n) across at most `workers` threads, contiguous
// chunks. Callers get determinism for free as long as fn(i) writes only to
// slot i of a preallocated buffer; reductions then happen in index order on
// the caller's side. The first exception (lowest thread index) is rethrown.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  if (n <= 0) return;
  const int w = static_cast<int>(
      std::min<std::int64_t>(std::max(workers, 1), n));
  if (w == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::int64_t chunk = (n + w - 1) / w;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) {
    const std::int64_t lo = static_cast<std::int64_t>(t) * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace entrorisk
