#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace scimap {

inline unsigned worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, count) on a small thread pool, handing out
/// chunks dynamically. fn must only write state owned by index i.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t chunk = 32) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), (count + chunk - 1) / chunk));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
}

/// Per-thread scratch variant: fn(i, scratch) where each worker owns one
/// scratch object built by make().
template <typename Make, typename Fn>
void parallel_for_with(std::size_t count, Make&& make, Fn&& fn, std::size_t chunk = 32) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), (count + chunk - 1) / chunk));
  if (workers <= 1) {
    auto scratch = make();
    for (std::size_t i = 0; i < count; ++i) fn(i, scratch);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    auto scratch = make();
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) fn(i, scratch);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
}

}  // namespace scimap
