#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace pmdyn {

// Runs fn(i) for i in [0, n) across hardware threads. Each index is computed
// independently and results must be written into index-addressed storage, so
// the output is identical to the serial order regardless of scheduling.
inline void parallel_for_indexed(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(hw == 0 ? 1 : hw);
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace pmdyn
