#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace neteffect {

/// Run fn(i) for i in [begin, end), split into contiguous chunks across
/// `threads` workers. Each index is processed by exactly one worker, so
/// disjoint per-index writes make the result independent of the worker count.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
    const std::int64_t count = end - begin;
    if (count <= 0) return;
    if (threads <= 1 || count == 1) {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = begin + count * w / workers;
        const std::int64_t hi = begin + count * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace neteffect
