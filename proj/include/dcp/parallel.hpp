#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace dcp {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0,count) into per-thread contiguous ranges and runs fn(begin,end)
// on each. fn must only touch disjoint state per index (callers write into
// index-addressed slots), so the result is independent of the thread count.
inline void parallel_for(std::uint64_t count, int threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  threads = std::min<std::uint64_t>(resolve_threads(threads), count == 0 ? 1 : count);
  if (threads <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::uint64_t chunk = (count + threads - 1) / threads;
  for (int i = 0; i < threads; ++i) {
    std::uint64_t begin = chunk * static_cast<std::uint64_t>(i);
    std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dcp
