#ifndef LP2_PARALLEL_HPP_
#define LP2_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace lp2 {

// Environment variable overriding the worker-thread count.
inline constexpr const char* kThreadsEnv = "LP2_THREADS";

inline unsigned worker_count() {
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Evaluates fn(0), ..., fn(n-1) on up to worker_count() threads.
//
// Results are stored by index, so the output never depends on scheduling.
// If any call throws, the exception from the lowest failing index is
// rethrown after all workers have joined.
template <typename F>
auto parallel_map(std::size_t n, F&& fn) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(worker_count(), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace lp2

#endif  // LP2_PARALLEL_HPP_
