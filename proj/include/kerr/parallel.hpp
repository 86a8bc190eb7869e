#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace kerr {

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [begin, end) split into contiguous chunks, one per
/// worker. Each index is processed exactly once; results written by distinct
/// indices must target disjoint memory. Output is independent of the worker
/// count as long as fn(i) itself is deterministic.
template <class Fn>
void parallel_for(int begin, int end, int workers, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    workers = resolve_workers(workers);
    if (workers <= 1 || n == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    if (workers > n) workers = n;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace kerr
