#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace paradigm {

inline unsigned default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Calls fn(i) for every i in [0, n) on up to `workers` threads. Callers
/// write results into slot i of a preallocated buffer and reduce afterwards
/// in index order, which keeps results independent of the worker count.
template <class Fn>
void parallel_for(size_t n, unsigned workers, Fn&& fn) {
    const size_t threads = std::min<size_t>(std::max(1u, workers), n);
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        try {
            for (size_t i = next++; i < n; i = next++) fn(i);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads - 1);
        for (size_t t = 0; t + 1 < threads; ++t) pool.emplace_back(body);
        body();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace paradigm
