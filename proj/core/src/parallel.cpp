#include "montest/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace montest {

std::size_t default_workers() {
  if (const char* env = std::getenv("MONTEST_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::uint64_t count, std::size_t workers, const std::function<void(std::uint64_t)>& body) {
  workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, count));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          if (failed.load(std::memory_order_relaxed)) return;
          const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= count) return;
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace montest
