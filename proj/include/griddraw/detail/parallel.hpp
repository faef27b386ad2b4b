#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace griddraw::detail {

inline unsigned resolve_threads(unsigned requested, std::size_t tasks) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

/// Runs fn(task) for task in [0, tasks) on a small pool. Results must be written to
/// task-indexed slots so the caller can reduce them in a fixed order.
/// The first exception thrown by any task is rethrown on the calling thread.
template <class Fn>
void for_each_task(std::size_t tasks, unsigned threads, Fn&& fn) {
  const unsigned workers = resolve_threads(threads, tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < tasks; t = next++) {
        try {
          fn(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace griddraw::detail
