#pragma once

#include <cstddef>
#include <functional>

namespace dbr {

/// Worker cap: DBR_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned max_threads();

/// Runs body(i) for i in [0, count). Iterations must be independent; results
/// should be written to per-index slots so the caller's reduction order is
/// fixed regardless of thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dbr
