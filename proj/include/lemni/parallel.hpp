#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lemni {

// Worker cap: LEMNI_THREADS if set, else all cores.
inline int default_thread_count() {
    if (const char *env = std::getenv("LEMNI_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Runs fn(i) for i in [0, n).  Each index writes only its own output slot, so
// the result is identical for any thread count; reductions happen afterwards
// in index order.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn,
                         int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto &th : pool) th.join();
}

} // namespace lemni
