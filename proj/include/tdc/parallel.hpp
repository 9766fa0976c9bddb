#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace tdc {

// Runs fn(begin, end) over fixed-size blocks of [0, n). Block boundaries do
// not depend on the worker count, so any per-block accumulation combined in
// block order yields results independent of scheduling.
inline void parallel_blocks(std::size_t n, unsigned jobs, std::size_t block,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (block == 0) block = 1;
  const std::size_t n_blocks = (n + block - 1) / block;
  if (jobs <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b)
      fn(b * block, std::min(n, (b + 1) * block));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b * block, std::min(n, (b + 1) * block));
    }
  };
  std::vector<std::thread> threads;
  unsigned n_threads = std::min<std::size_t>(jobs, n_blocks);
  threads.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

}  // namespace tdc
