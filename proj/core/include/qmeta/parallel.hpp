#pragma once

#include <functional>

namespace qmeta {

// Worker count from the QMETA_WORKERS environment variable, else 1.
int default_workers();

// Runs fn(0..count-1) across at most `workers` threads with static
// partitioning. Callers write results into index-addressed slots, so the
// outcome is identical for any worker count. The first exception thrown by
// any worker is rethrown after all threads join.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace qmeta
