#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace orthoasym {

/// Number of workers to use when the caller passes 0.
inline unsigned default_workers()
{
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/**
 * Runs fn(i) for i in [0, n) on a small pool and returns the results in index
 * order, so output never depends on completion order. The first exception (by
 * index) is rethrown after all workers finish.
 */
template <class R>
std::vector<R> parallel_map(std::size_t n, const std::function<R(std::size_t)>& fn, unsigned workers = 0)
{
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const unsigned w = std::max(1u, std::min<unsigned>(workers ? workers : default_workers(), unsigned(n)));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < w; ++k)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace orthoasym
