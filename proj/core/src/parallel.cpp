#include "ghkit/parallel.hpp"

#include <atomic>

namespace ghkit {
namespace {
std::atomic<std::size_t> g_max_threads{0};
}

void set_max_threads(std::size_t n) noexcept { g_max_threads.store(n); }

std::size_t max_threads() noexcept {
  const std::size_t cap = g_max_threads.load();
  if (cap != 0) return cap;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace ghkit
