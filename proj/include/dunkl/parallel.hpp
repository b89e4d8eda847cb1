#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace dunkl {

/// Runs f(i) for i in [0, n) on up to `jobs` threads. Tasks touch disjoint
/// output slots, so the merge order is deterministic by construction.
template <class F>
void parallel_for_index(std::size_t n, std::size_t jobs, F&& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min(jobs, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace dunkl
