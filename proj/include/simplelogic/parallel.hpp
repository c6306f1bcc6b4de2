#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace simplelogic {

inline int default_worker_count() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(begin, end) over disjoint index sub-ranges on `workers` threads.
// The first exception thrown by any worker is rethrown on the caller.
inline void parallel_for_range(std::size_t count, int workers,
                               const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        fn(0, count);
        return;
    }
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace simplelogic
