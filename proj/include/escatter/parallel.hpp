#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace escatter {

// 0 selects the hardware concurrency.
inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

//---------------------------------------------------------------------------//
/*!
 * Call fn(i) for every i in [0, n) on up to `threads` workers.
 *
 * Indices are handed out dynamically; fn must write only to per-index
 * storage so that results do not depend on the schedule. If any call throws,
 * the exception from the lowest failing index is rethrown after all workers
 * have joined.
 */
template<class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn)
{
    threads = static_cast<unsigned>(
        std::min<std::size_t>(resolve_threads(threads), n));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (i < error_index)
                {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace escatter
