#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ballbasis {

/// Worker count: BALLBASIS_THREADS if set (>= 1), otherwise the hardware
/// concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("BALLBASIS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(i) for i in [0, n).  Iterations must be independent; results
/// should be written to preallocated per-index slots so that any reduction
/// afterwards is an ordered (deterministic) pass.
template <class Body>
void parallel_for(int n, Body&& body) {
  if (n <= 0) return;
  const int workers = std::min(thread_budget(), n);
  if (workers <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ballbasis
