#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lr {

/// Worker count: explicit request, else the LR_THREADS environment variable,
/// else hardware concurrency.
int resolve_thread_count(int requested = 0);

/// Runs fn(begin, end) over contiguous chunks of [0, n) on `threads` workers.
/// Chunks are disjoint, so writes to per-index slots need no locking; the
/// first worker exception is rethrown on the calling thread.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace lr
