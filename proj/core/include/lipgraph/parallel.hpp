#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lipgraph {

/// Runs body(i) for i in [0, n) on a few threads. Each index is visited once,
/// so writes into per-index slots stay deterministic.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, n / 16 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace lipgraph
