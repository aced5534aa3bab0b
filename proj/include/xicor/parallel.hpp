#pragma once

#include <cstddef>
#include <functional>

namespace xicor {

// Static partition of [0, count) over worker threads. fn(i) must touch only
// per-index state; results are then deterministic regardless of thread count.
// Serial when threads <= 1. The first exception thrown by any worker is
// rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// hardware_concurrency, at least 1.
unsigned default_threads() noexcept;

} // namespace xicor
