#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qmx {

inline unsigned default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Evaluates fn(0) .. fn(n-1) on a pool of worker threads and returns the
/// results in index order. The first exception thrown by a task is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace qmx
