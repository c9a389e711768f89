#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gabor {

// Worker count: GABOR_THREADS caps parallelism, default = hardware.
inline int thread_count() {
    if (const char* e = std::getenv("GABOR_THREADS")) {
        int n = std::atoi(e);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Run fn(chunk_index) for chunk_index in [0, n_chunks). Results must be
// written to pre-sized slots indexed by chunk, then reduced sequentially by
// the caller: that is what makes outputs bit-identical for any thread count.
inline void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn) {
    const int nt = std::min<std::size_t>(thread_count(), n_chunks == 0 ? 1 : n_chunks);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mx;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n_chunks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lk(err_mx);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace gabor
