// SPDX-License-Identifier: Apache-2.0
//
// Replica-parallel execution. Each replica body is a pure function of its
// replica index and writes only to its own output slot, so results are
// identical for any worker count; reductions afterwards use pairwise_sum.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sddesim {

inline int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(worker, replica) for every replica in [0, count). worker is a
// stable id in [0, workers) usable to index per-worker scratch space.
inline void for_each_replica(std::size_t count, int workers,
                             const std::function<void(int, std::size_t)>& body) {
  if (workers <= 0) workers = default_workers();
  if (workers == 1 || count < 2) {
    for (std::size_t r = 0; r < count; ++r) body(0, r);
    return;
  }
  const auto n_workers = static_cast<std::size_t>(workers);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t chunk = (count + n_workers - 1) / n_workers;
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t r = begin; r < end; ++r) body(static_cast<int>(w), r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sddesim
