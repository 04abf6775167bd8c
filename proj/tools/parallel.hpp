#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tools {

// Runs fn(i) for i in [0, count) across at most `threads` workers. Results
// are written by index, so the output order never depends on scheduling.
template <typename Fn>
void parallel_for(size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<size_t> next{0};
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace tools
