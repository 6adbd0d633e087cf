#pragma once

#include "sasaki/core.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sasaki::detail {

// Runs fn(i) for i in [0, count). Each index is written by exactly one
// worker, so callers that store into a preallocated slot per index get
// results independent of the thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, worker_threads()));
  if (threads == 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t used = std::min(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(used);
  pool.reserve(used);
  for (std::size_t t = 0; t < used; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += used) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sasaki::detail
