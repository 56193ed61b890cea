#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qquiver {

/// Worker count: QQUIVER_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
inline std::size_t default_thread_count() {
    if (const char* env = std::getenv("QQUIVER_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Splits [0, count) into at most `threads` contiguous chunks and calls
/// body(chunk, begin, end) for each, one thread per chunk. Chunk indices are
/// in range order so callers can merge per-chunk results deterministically.
/// The first exception thrown by any chunk is rethrown after all joins.
template <class Body>
void parallel_chunks(std::size_t count, std::size_t threads, Body&& body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads <= 1) {
        if (count > 0) {
            body(std::size_t{0}, std::size_t{0}, count);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t base = count / threads;
    const std::size_t extra = count % threads;
    std::size_t begin = 0;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t end = begin + base + (t < extra ? 1 : 0);
        pool.emplace_back([&, t, begin, end] {
            try {
                body(t, begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
        begin = end;
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

inline std::size_t chunk_count(std::size_t count, std::size_t threads) {
    return std::max<std::size_t>(1, std::min(threads, count));
}

}  // namespace qquiver
