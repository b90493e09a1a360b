#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace facetforest {

/// FACETFOREST_THREADS when set, hardware concurrency otherwise; at least 1.
int default_thread_count();

/// Runs fn(i) for i in [0, n) across the given number of threads via an
/// atomic work counter. fn must be safe to call concurrently on distinct
/// indices; callers keep determinism by writing into per-index slots. The
/// first exception is rethrown on the caller after all workers join.
template <class Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::atomic<int> error_claimed{0};
  auto worker = [&]() {
    while (true) {
      std::int64_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (error_claimed.exchange(1) == 0) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  int count = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace facetforest
