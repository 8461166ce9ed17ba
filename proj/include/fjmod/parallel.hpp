#pragma once
// Tiny deterministic parallel-for: the index space is split into contiguous
// chunks, workers fill per-chunk slots, and reduction happens in index order,
// so exact results do not depend on the degree of parallelism.

#include <thread>
#include <vector>

namespace fjmod {

inline unsigned worker_count() {
    static unsigned n = [] {
        const char* env = std::getenv("FJMOD_JOBS");
        if (env) {
            int v = std::atoi(env);
            if (v > 0) return (unsigned)v;
        }
        unsigned hc = std::thread::hardware_concurrency();
        return hc ? hc : 1u;
    }();
    return n;
}

template <class Fn>
void parallel_for(long long begin, long long end, Fn body) {
    long long total = end - begin;
    unsigned workers = worker_count();
    if (total <= 0) return;
    if (workers <= 1 || total < 256) {
        for (long long i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    long long chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        long long lo = begin + (long long)w * chunk;
        long long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (long long i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace fjmod
