#pragma once

#include <functional>

namespace symfem {

/// Worker count: CONVLAB_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Indices are
/// split into contiguous blocks; fn must only write state owned by index i,
/// so results do not depend on the thread count. The first exception thrown
/// by any call (lowest index wins) is rethrown after all threads join.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace symfem
