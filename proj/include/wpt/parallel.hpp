#pragma once

#include <cstddef>
#include <functional>

namespace wpt {

// Worker cap for internal parallelism. Reads WPT_TRAJOPT_THREADS once per
// process; 0 or unset means auto (hardware concurrency).
unsigned thread_budget();

// Runs fn(i) for i in [0, n). Splits contiguous chunks across at most
// thread_budget() workers; falls back to a plain loop for small n. The first
// exception thrown by any worker is rethrown on the caller. Callers are
// responsible for making their reductions order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wpt
