#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pruwalk::util {

// Worker cap: PRUWALK_THREADS if set, else hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("PRUWALK_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel map over [0, n): results land by index regardless
// of scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([=] {
            for (int i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace pruwalk::util
