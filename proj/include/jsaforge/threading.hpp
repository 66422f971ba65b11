#pragma once

#include <functional>

namespace jsaforge {

/// Number of worker threads to use: JSA_FORGE_THREADS when set and positive,
/// otherwise the hardware concurrency. `requested` > 0 overrides both but is
/// still capped by JSA_FORGE_THREADS.
int thread_budget(int requested = 0);

/// Run fn(i) for i in [0, n) on up to thread_budget(requested) threads.
/// Deterministic partitioning; exceptions are rethrown on the caller.
void parallel_for(int n, const std::function<void(int)>& fn, int requested = 0);

}  // namespace jsaforge
