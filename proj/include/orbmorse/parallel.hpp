#pragma once

#include <functional>

namespace orbmorse {

// Worker count: ORBIFOLD_MORSE_THREADS when set to a positive value, hardware
// concurrency when unset or 0.
int worker_count();

// Runs fn(i) for i in [0, n) across workers. Results must be written to
// index-addressed slots so the outcome is independent of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace orbmorse
