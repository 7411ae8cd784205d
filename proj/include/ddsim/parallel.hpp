#pragma once

#include <functional>

namespace ddsim {

/// Worker count used by grid evaluations (default 1).
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n) on thread_count() threads in contiguous
/// chunks. The first exception thrown by any worker is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace ddsim
