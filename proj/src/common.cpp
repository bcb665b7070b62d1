#include "hk/common.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <mutex>

namespace hk {

namespace {
std::atomic<int> g_threads{0};  // 0 = not yet resolved

int resolve_default() {
  if (const char* env = std::getenv("HK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}
}  // namespace

int default_thread_count() {
  int t = g_threads.load();
  if (t <= 0) {
    t = resolve_default();
    g_threads.store(t);
  }
  return t;
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : resolve_default()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
  const int nt = default_thread_count();
  if (n == 0) return;
  if (nt <= 1 || n < 2048) {
    chunk_fn(0, n);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (n + workers - 1) / workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * step;
    const std::size_t hi = std::min(n, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        chunk_fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

}  // namespace hk
