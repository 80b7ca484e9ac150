#ifndef RSIM_PARALLEL_HPP
#define RSIM_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace rsim {

/// Runs fn(i) for i in [0, n) across `workers` threads. Work items write to
/// index-addressed slots only, so the result is identical for any worker
/// count; exceptions are rethrown on the calling thread.
inline void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next(0);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mtx;
    int count = std::min<long>(workers, n);
    pool.reserve(static_cast<size_t>(count));
    for (int w = 0; w < count; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mtx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace rsim

#endif
