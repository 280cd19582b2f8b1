#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sumprod::detail {

inline unsigned worker_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1U : hc;
}

// Splits [0, n) into contiguous chunks, runs fn(begin, end) -> R on each chunk
// in its own thread and returns the per-chunk results in chunk order, so the
// caller's merge does not depend on scheduling.
template <class R, class Fn>
std::vector<R> map_chunks(std::size_t n, Fn fn, unsigned workers = worker_count()) {
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    std::vector<R> out(chunks);
    if (chunks == 1) {
        out[0] = fn(std::size_t{0}, n);
        return out;
    }
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
            threads.emplace_back([&, c, lo, hi] {
                try {
                    out[c] = fn(lo, hi);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace sumprod::detail
