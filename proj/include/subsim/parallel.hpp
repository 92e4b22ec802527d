#pragma once

#include <functional>

namespace subsim {

// Worker count: SUBTRACT_SIM_THREADS if set (>= 1), otherwise the hardware
// concurrency.
int max_threads();

// Runs fn(0..n-1) across worker threads. Nested calls degrade to a serial
// loop so only the outermost level fans out. Callers must make iterations
// independent; any reduction happens on the caller's side in index order.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace subsim
