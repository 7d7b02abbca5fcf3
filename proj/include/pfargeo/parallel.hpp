#pragma once

#include <functional>

namespace pfargeo {

/// Worker count: PFA_RD_GEO_THREADS when set (clamped to >= 1), otherwise
/// the hardware concurrency.
int default_worker_count();

/// Run fn(index) for index in [0, count) across `workers` threads in
/// contiguous blocks. Output written per-index is deterministic regardless
/// of the worker count. The first exception thrown by any worker is
/// rethrown on the calling thread.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace pfargeo
