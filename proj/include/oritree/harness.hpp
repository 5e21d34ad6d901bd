#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace oritree {

// Worker count: hardware concurrency, capped by ORITREE_THREADS when set.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORITREE_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) hw = std::min(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return hw;
}

// results[i] = fn(i). Work is claimed from a shared counter; results land
// by index, so the output never depends on scheduling.
template <class F>
auto parallel_map(std::size_t count, F&& fn, unsigned workers = worker_count()) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> results(count);
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) results[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace oritree
