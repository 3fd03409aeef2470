#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace minreg {

/// Effective worker count: MINREG_WORKERS env var wins, then the requested
/// value; 0 means hardware concurrency.
inline int resolve_workers(int requested) {
  if (const char* env = std::getenv("MINREG_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Run fn(i) for i in [0,count). Work is striped by index so each index is
/// always processed with the same inputs regardless of worker count; callers
/// must keep per-index outputs and merge in index order.
inline void parallel_for_index(std::size_t count, int workers,
                               const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace minreg
