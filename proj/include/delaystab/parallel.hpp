#pragma once

#include <cstddef>
#include <functional>

namespace delaystab {

/// Worker threads for internal loops: DELAYSTAB_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n), splitting the range into contiguous chunks
/// over worker_count() threads. body must only write to slot i of its output.
/// If chunks throw, the exception of the lowest-indexed chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace delaystab
