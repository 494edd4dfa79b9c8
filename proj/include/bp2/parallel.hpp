#pragma once

#include <cstddef>
#include <functional>

namespace bp2 {

/// Worker count: BP2_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls fn(i) for every i in [0, n), spread over thread_count() workers.
/// Each index is visited exactly once; fn must only write to state owned by
/// its index. Exceptions are rethrown on the caller (lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bp2
