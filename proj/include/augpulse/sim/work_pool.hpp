#pragma once

#include <functional>

namespace augpulse {

// Runs body(0..n-1) on up to `jobs` threads. Callers write results into
// slots indexed by i, so output order never depends on scheduling. The first
// exception thrown by any task is rethrown after all threads join.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace augpulse
