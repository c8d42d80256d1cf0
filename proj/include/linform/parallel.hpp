#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace linform {

/// Worker count: an explicit request wins, then LINFORM_THREADS, then hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("LINFORM_THREADS"); env != nullptr) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for every i in [0, n_tasks) on up to `threads` workers.
/// Tasks are claimed in index order. If any task throws, the exception from the
/// lowest-indexed failing task is rethrown after all workers stop.
template <class Fn>
void run_tasks(std::size_t n_tasks, unsigned threads, Fn&& fn) {
  if (n_tasks == 0) return;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n_tasks);
  if (workers == 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::size_t err_index = n_tasks;
  std::exception_ptr err;

  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
        stop.store(true, std::memory_order_relaxed);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace linform
