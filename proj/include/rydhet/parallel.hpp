#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rydhet {

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency) with a static contiguous partition. Results must be written by
/// index, which keeps output independent of the schedule. Partitions are
/// ordered, so the first stored exception comes from the lowest failing range.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            body(i);
          } catch (...) {
            errors[w] = std::current_exception();
            return;
          }
        }
      });
    }
  }
  for (unsigned w = 0; w < threads; ++w)
    if (errors[w]) std::rethrow_exception(errors[w]);
}

}  // namespace rydhet
