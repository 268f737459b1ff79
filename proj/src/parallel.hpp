#pragma once

// Internal helper: run `fn(i)` for i in [0, n) across a fixed thread pool.
// Thread count comes from the CONTEXTURE_THREADS environment variable
// (default 1; values < 1 or unparsable fall back to 1).  Work is split into
// contiguous ranges, and callers write results into per-index slots, so
// output is identical for every thread count.

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace contexture::detail {

inline int thread_count() {
  const char* env = std::getenv("CONTEXTURE_THREADS");
  if (env == nullptr) return 1;
  try {
    int n = std::stoi(env);
    return n >= 1 ? n : 1;
  } catch (...) {
    return 1;
  }
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int workers = thread_count();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = n * w / workers;
    std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace contexture::detail
