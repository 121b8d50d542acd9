#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace graphcurv::detail {

/// Runs fn(i) for i in [0, n). Each index owns its output slot, so the
/// result is schedule-independent.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = static_cast<int>(hw == 0 ? 1 : hw);
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int stride = workers;
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += stride) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace graphcurv::detail
