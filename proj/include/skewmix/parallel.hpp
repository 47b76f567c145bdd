#pragma once

#include <functional>

namespace skewmix {

/// Number of worker threads: hardware concurrency capped by the
/// SKEWMIX_THREADS environment variable (>= 1).
int max_threads();

/// Runs fn(i) for i in [0, n) across threads in fixed contiguous blocks.
/// Each index owns its output slots, so results are identical to a
/// sequential loop regardless of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace skewmix
