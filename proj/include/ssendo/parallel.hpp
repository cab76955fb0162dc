#pragma once

// Ordered parallel map over an index range with a fixed-size worker pool.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ssendo {

inline std::atomic<unsigned>& worker_setting()
{
    static std::atomic<unsigned> w{0};
    return w;
}

inline void set_workers(unsigned n) { worker_setting() = n; }

inline unsigned workers()
{
    unsigned w = worker_setting().load();
    if (w == 0)
        w = std::max(1u, std::thread::hardware_concurrency());
    return w;
}

// out[i] = fn(i) for i in [0, n); the first exception thrown by any task is rethrown.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn, unsigned nworkers = workers())
{
    std::vector<T> out(n);
    if (n == 0)
        return out;
    nworkers = std::max(1u, std::min<unsigned>(nworkers, static_cast<unsigned>(n)));
    if (nworkers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err)
                    err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nworkers; ++t)
        pool.emplace_back(body);
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
    return out;
}

} // namespace ssendo
