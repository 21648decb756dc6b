#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace spheq {

// worker count: SPHEQ_THREADS environment variable, else hardware concurrency
inline int thread_count() {
    if (const char* env = std::getenv("SPHEQ_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Run fn(chunk, begin, end) over [0,total) split into a fixed number of chunks
// independent of the worker count, so per-chunk results can be combined in
// chunk order and are reproducible for any SPHEQ_THREADS setting.
template <class F>
void parallel_chunks(std::size_t total, int chunks, F&& fn) {
    if (total == 0) return;
    const int workers = std::min<int>(thread_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) {
            const std::size_t begin = total * c / chunks;
            const std::size_t end = total * (c + 1) / chunks;
            if (begin < end) fn(c, begin, end);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int c = w; c < chunks; c += workers) {
                const std::size_t begin = total * c / chunks;
                const std::size_t end = total * (c + 1) / chunks;
                if (begin < end) fn(c, begin, end);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace spheq
