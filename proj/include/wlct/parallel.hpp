/**
 * @file parallel.hpp
 * @brief Minimal fork-join loop over independent tasks.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wlct {

/// 0 means "one per hardware thread".
inline unsigned resolve_threads(unsigned requested) {
    if (requested)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs fn(task) for task in [0, tasks) on up to `threads` workers. Tasks must
 * write disjoint outputs. If several tasks throw, the exception of the lowest
 * task index is rethrown, so failures do not depend on scheduling.
 */
template <class Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), tasks));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t)
            fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_task = tasks;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks)
                return;
            try {
                fn(t);
            } catch (...) {
                std::lock_guard lock(mu);
                if (t < failed_task) {
                    failed_task = t;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace wlct
