#include "jsaforge/threading.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jsaforge {

int thread_budget(int requested) {
  int cap = 0;
  if (const char* env = std::getenv("JSA_FORGE_THREADS")) {
    cap = std::atoi(env);
    if (cap < 1) cap = 0;
  }
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (cap > 0 && n > cap) n = cap;
  return n;
}

void parallel_for(int n, const std::function<void(int)>& fn, int requested) {
  if (n <= 0) return;
  const int workers = std::min(thread_budget(requested), n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace jsaforge
