#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace wumetric {

/// Worker cap: WU_METRIC_THREADS if set (positive integer), otherwise the
/// hardware default.
inline int worker_count() {
  if (const char* env = std::getenv("WU_METRIC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Evaluate fn(0..count-1) across workers, each result landing in its own
/// slot, so the output is identical whatever the scheduling. R must be
/// default-constructible.
template <class R, class Fn>
std::vector<R> parallel_map(int count, Fn&& fn) {
  std::vector<R> out(count);
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) out[i] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace wumetric
