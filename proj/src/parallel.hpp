#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace elbp::detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) split into contiguous chunks, one per
/// worker. Workers write only to caller-owned slots indexed by i, so the
/// result never depends on the thread count. The first failing chunk's
/// exception (in chunk order) is rethrown after all workers join.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(resolve_threads(threads), std::max(count, 1));
    if (count <= 0) return;
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    const int chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int begin = w * chunk;
        const int end = std::min(begin + chunk, count);
        if (begin >= end) break;
        workers.emplace_back([&, w, begin, end] {
            try {
                for (int i = begin; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (auto& error : errors)
        if (error) std::rethrow_exception(error);
}

}  // namespace elbp::detail
