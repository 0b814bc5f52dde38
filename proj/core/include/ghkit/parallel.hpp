#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ghkit {

/// Caps the number of worker threads used by the parallel loops below.
/// Zero restores the default (hardware concurrency).
void set_max_threads(std::size_t n) noexcept;
std::size_t max_threads() noexcept;

namespace detail {
/// Set on threads that are running the body of a parallel loop; nested
/// loops then run inline instead of spawning more workers.
inline thread_local bool in_parallel_region = false;

struct RegionGuard {
  bool saved = in_parallel_region;
  RegionGuard() { in_parallel_region = true; }
  ~RegionGuard() { in_parallel_region = saved; }
};
}  // namespace detail

/// Calls fn(begin, end) on disjoint contiguous blocks covering [0, n).
/// Block boundaries depend only on n and the thread cap.
template <typename Fn>
void parallel_blocks(std::size_t n, Fn&& fn) {
  const std::size_t workers = detail::in_parallel_region ? 1 : std::min(max_threads(), n);
  if (workers <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  // Exceptions are carried back to the caller; the lowest block wins.
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  auto run = [&fn, &errors](std::size_t w, std::size_t b, std::size_t e) {
    detail::RegionGuard guard;
    try {
      fn(b, e);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(run, w, b, e);
  }
  run(0, 0, std::min(n, chunk));
  for (auto& t : pool) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  parallel_blocks(n, [&fn](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) fn(i);
  });
}

/// Max-reduction of fn(i) over [0, n); `init` when n == 0. Max is
/// order-independent, so the result does not depend on the thread count.
template <typename Fn>
double parallel_max(std::size_t n, double init, Fn&& fn) {
  const std::size_t cap = detail::in_parallel_region ? 1 : max_threads();
  const std::size_t workers = std::max<std::size_t>(1, std::min(cap, n));
  std::vector<double> partial(workers, init);
  const std::size_t chunk = n == 0 ? 0 : (n + workers - 1) / workers;
  parallel_blocks(n, [&](std::size_t b, std::size_t e) {
    double m = init;
    for (std::size_t i = b; i < e; ++i) m = std::max(m, fn(i));
    partial[chunk == 0 ? 0 : b / chunk] = m;
  });
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace ghkit
