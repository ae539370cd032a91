#pragma once
// Deterministic data-parallel helpers: static index partition over std::thread,
// results written to per-index slots so the output is independent of the
// thread count and of scheduling.
#include <functional>

namespace conelet {

// resolve a worker count: CONELET_THREADS env var wins, then `requested`
// (0 = auto), then hardware concurrency; always >= 1
int thread_count(int requested = 0);

// run fn(i) for i in [0, n); fn must only touch state owned by index i
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

} // namespace conelet
