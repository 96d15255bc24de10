#ifndef FRACSPACE_THREADING_HPP
#define FRACSPACE_THREADING_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fracspace {

// Worker count: FRACSPACE_THREADS when set, otherwise 1. Results must be
// written to preallocated per-index slots so reductions stay in fixed order.
inline int worker_count() {
  if (const char* env = std::getenv("FRACSPACE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), std::max(1, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fracspace

#endif
