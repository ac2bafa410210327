#ifndef HOLO_PARALLEL_HPP
#define HOLO_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace holo {

/// Worker count: hardware concurrency, capped by HOLO_THREADS.
inline int thread_budget() {
  const unsigned hw = std::thread::hardware_concurrency();
  int budget = hw > 0 ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("HOLO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      budget = static_cast<int>(v);
  }
  return budget;
}

/// Runs fn(i) for i in [0, count). Each index is processed exactly
/// once and must write only to its own output slot; results are then
/// independent of scheduling. The first exception is rethrown.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  if (count <= 0) return;
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace holo

#endif
