#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace vortexbody {

/// Number of worker threads. Defaults to the hardware count, overridable
/// with VORTEXBODY_THREADS.
inline unsigned worker_count() {
    static unsigned n = [] {
        if (const char* env = std::getenv("VORTEXBODY_THREADS")) {
            long v = std::atol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? hc : 1u;
    }();
    return n;
}

/// Runs fn(i) for i in [0, n). Results must be written to per-index slots;
/// reductions over those slots stay sequential so output is independent of
/// the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace vortexbody
