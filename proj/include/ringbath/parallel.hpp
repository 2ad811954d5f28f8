// parallel.hpp — deterministic index-parallel loop helper
//
// Work items write only to their own output slot, so results are identical
// for any thread count. RINGBATH_THREADS overrides hardware concurrency.

#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ringbath {

inline unsigned thread_count() {
    if (const char* env = std::getenv("RINGBATH_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

template <typename Body>
void parallel_for(std::size_t n, Body&& body, unsigned nthreads = thread_count()) {
    if (n == 0) return;
    if (nthreads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (nthreads > n) nthreads = static_cast<unsigned>(n);

    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    workers.reserve(nthreads);

    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (unsigned w = 0; w < nthreads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace ringbath
