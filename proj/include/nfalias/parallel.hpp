#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nfalias {

/// Thread budget for grid evaluations. 0 selects the hardware concurrency.
/// Work is split into contiguous index blocks and every index is computed by
/// exactly one call, so results do not depend on the thread count.
struct Parallelism {
    unsigned threads = 0;

    unsigned resolved() const noexcept {
        if (threads != 0) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
};

/// Calls body(i) for every i in [0, n). If several blocks throw, the
/// exception from the lowest block is rethrown.
template <class Body>
void parallel_for(std::size_t n, Parallelism par, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(par.resolved(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = w * block;
            const std::size_t hi = std::min(n, lo + block);
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace nfalias
