#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ayah {

/// Runs fn(i) for every i in [0, n) on at most `max_workers` threads. When
/// calls throw, dispatch stops and the exception from the lowest failing
/// index is rethrown, so the reported error does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t max_workers, Fn &&fn) {
  if (n == 0)
    return;
  if (max_workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    const std::size_t count = std::min(max_workers, n);
    threads.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
      threads.emplace_back(worker);
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace ayah
