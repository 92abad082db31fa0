// parallel.hpp — deterministic index-space parallel_for. Worker count comes from
// SLE_RAMAN_THREADS (0 or unset = hardware concurrency); results are written to
// caller-owned slots so assembly order never depends on scheduling.

#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sleraman {

inline std::size_t resolve_thread_count(std::size_t requested = 0) {
    if (requested == 0) {
        if (const char* env = std::getenv("SLE_RAMAN_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1;
    }
    return requested;
}

template <typename Fn>
void parallel_for(std::size_t n, const Fn& fn, std::size_t threads = 0) {
    threads = std::min(resolve_thread_count(threads), n > 0 ? n : std::size_t{1});
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr firstError;
    std::mutex errorMutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (firstError) std::rethrow_exception(firstError);
}

} // namespace sleraman
