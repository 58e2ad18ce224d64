#pragma once

#include <functional>

namespace memkit {

// Number of worker threads: min(hardware_concurrency, MEMKIT_THREADS) when
// the environment variable is set, otherwise hardware_concurrency.
int thread_budget();

// Runs fn(i) for i in [0, n) across the thread budget. Exceptions from
// workers are rethrown on the calling thread (first one wins).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace memkit
