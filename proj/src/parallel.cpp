#include "conelet/parallel.hpp"
#include <thread>
#include <vector>
#include <cstdlib>
#include <algorithm>

namespace conelet {

int thread_count(int requested) {
    if (const char* env = std::getenv("CONELET_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    if (requested >= 1) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn, int threads) {
    if (n <= 0) return;
    int T = std::min(thread_count(threads), n);
    if (T <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        pool.emplace_back([&fn, t, T, n] {
            for (int i = t; i < n; i += T) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace conelet
