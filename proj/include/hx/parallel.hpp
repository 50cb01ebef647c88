#ifndef HX_PARALLEL_HPP_
#define HX_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hx {

  // Number of workers to use for a requested degree; 0 means the machine's
  // hardware concurrency.
  inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0) {
      jobs = std::max(1u, std::thread::hardware_concurrency());
    }
    return jobs;
  }

  // Calls fn(i) for every i in [0, n), spread over `jobs` threads. Work items
  // are claimed dynamically, so fn must write only to per-index state; any
  // reduction happens afterwards, in index order, which keeps results
  // independent of the schedule. The first exception thrown is rethrown.
  template <typename Fn>
  void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    jobs = std::min<unsigned>(resolve_jobs(jobs),
                              static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    if (jobs <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        fn(i);
      }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    auto                     worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
          next = n;
          return;
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(jobs);
      for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back(worker);
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace hx

#endif  // HX_PARALLEL_HPP_
