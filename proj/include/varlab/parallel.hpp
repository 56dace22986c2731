#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace varlab {

  // Runs task(i) for i in [0, n) on up to `workers` threads. Tasks are
  // claimed from a shared counter; callers write results into slot i so the
  // merge order is fixed. The first exception thrown is rethrown.
  template <typename Task>
  void run_tasks(std::size_t n, std::size_t workers, Task&& task) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        task(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace varlab
