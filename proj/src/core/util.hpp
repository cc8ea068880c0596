#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace th {

// Index-sharded parallel loop. n_threads <= 0 picks the hardware count.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body,
                         int n_threads = 0) {
    if (n == 0) return;
    size_t hw = n_threads > 0 ? static_cast<size_t>(n_threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    hw = std::min(hw, n);
    if (hw <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(hw);
    for (size_t w = 0; w < hw; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += hw) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace th
