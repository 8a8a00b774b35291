#include "fxcone/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fxcone {

namespace {

std::atomic<unsigned> g_override{0};
thread_local bool t_inside_worker = false;

}  // namespace

unsigned worker_count() {
  if (unsigned w = g_override.load()) return w;
  if (const char* env = std::getenv("FXCONE_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(unsigned workers) { g_override.store(workers); }

void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  chunks = std::clamp<std::size_t>(chunks, 1, n);
  auto bounds = [&](std::size_t c) {
    return std::pair{n * c / chunks, n * (c + 1) / chunks};
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), chunks));
  if (workers <= 1 || t_inside_worker) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      body(c, b, e);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    t_inside_worker = true;
    for (std::size_t c; (c = next.fetch_add(1)) < chunks;) {
      try {
        auto [b, e] = bounds(c);
        body(c, b, e);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    t_inside_worker = false;
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fxcone
