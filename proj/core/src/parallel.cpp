#include "willmore/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace willmore {

int thread_count() {
  static const int cached = [] {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    n = std::min(n, 16);
    if (const char* env = std::getenv("WILLMORE_LAB_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1) n = std::min(n, cap);
    }
    return n;
  }();
  return cached;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  // Chunk layout depends only on n.
  const std::size_t n_chunks = std::min<std::size_t>(n, 64);
  const std::size_t chunk = (n + n_chunks - 1) / n_chunks;
  const int threads = thread_count();
  if (threads <= 1 || n_chunks == 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) {
      const std::size_t b = i * chunk;
      if (b >= n) break;
      fn(i, b, std::min(n, b + chunk));
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks) return;
        const std::size_t b = i * chunk;
        if (b >= n) continue;
        try {
          fn(i, b, std::min(n, b + chunk));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace willmore
