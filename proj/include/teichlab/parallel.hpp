#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace teichlab {

inline unsigned workerCount() {
    unsigned n = std::thread::hardware_concurrency();
    return std::clamp(n, 1u, 64u);
}

// Runs fn(i) for i in [0, n) on a few threads. Results must be written to per-index
// slots so that the outcome does not depend on scheduling. Rethrows the first exception.
template <class Fn>
void parallelFor(std::size_t n, Fn&& fn) {
    unsigned workers = std::min<std::size_t>(workerCount(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex errMutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(errMutex);
                    if (!err) err = std::current_exception();
                    next = n;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace teichlab
