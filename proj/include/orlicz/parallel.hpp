#pragma once

#include <cstddef>
#include <functional>

namespace orlicz {

/// Worker count: ORLICZ_LAB_THREADS if set (>= 1), else the hardware
/// concurrency, never more than `tasks`.
[[nodiscard]] std::size_t worker_count(std::size_t tasks);

/// Runs body(i) for i in [0, n) on worker_count(n) threads. Each index runs
/// exactly once; the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace orlicz
