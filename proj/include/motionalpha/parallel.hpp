#ifndef MOTIONALPHA_PARALLEL_HPP
#define MOTIONALPHA_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace motionalpha {

/// Calls f(k) for k in [0, n) on `threads` workers with contiguous chunks.
/// Results must be written to per-index slots; the first exception thrown by
/// any worker is rethrown after all workers joined.
template <typename F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) f(k);
    return;
  }
  std::exception_ptr error;
  std::mutex lock;
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&, begin, end] {
      try {
        for (std::size_t k = begin; k < end; ++k) f(k);
      } catch (...) {
        const std::lock_guard<std::mutex> guard(lock);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_PARALLEL_HPP
