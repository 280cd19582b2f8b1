#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sumprod/detail/parallel.hpp"
#include "sumprod/error.hpp"

namespace sumprod::detail {

using IndexTuple = std::vector<std::uint32_t>;

// Walks every tuple in [0, n)^len in odometer order starting at the tuple whose
// mixed-radix rank is `first`, for `count` tuples.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t len, std::uint64_t first, std::uint64_t count, Fn fn) {
    IndexTuple t(len);
    std::uint64_t r = first;
    for (std::size_t p = len; p-- > 0;) {
        t[p] = static_cast<std::uint32_t>(r % n);
        r /= n;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        fn(t);
        for (std::size_t p = len; p-- > 0;) {
            if (++t[p] < n) break;
            t[p] = 0;
        }
    }
}

inline std::uint64_t int_pow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// All ordered index tuples (i_1..i_k) with sum_p signs[p] * values[i_p] == 0.
// The right half is tabulated by its signed sum; the left half is enumerated
// in parallel chunks and looks up the negation of its own sum.
template <class V, class Hash>
std::vector<IndexTuple> zero_sum_tuples(const std::vector<V>& values, const std::vector<int>& signs,
                                        unsigned workers = worker_count()) {
    const std::size_t k = signs.size(), n = values.size();
    const std::size_t left = k / 2, right = k - left;
    if (n == 0) return {};

    auto signed_sum = [&](const IndexTuple& t, std::size_t offset) {
        V acc{};
        for (std::size_t p = 0; p < t.size(); ++p) {
            if (signs[offset + p] > 0)
                acc += values[t[p]];
            else
                acc -= values[t[p]];
        }
        return acc;
    };

    std::unordered_map<V, std::vector<std::uint32_t>, Hash> table;
    for_each_tuple(n, right, 0, int_pow(n, right), [&](const IndexTuple& t) {
        auto& slot = table[signed_sum(t, left)];
        slot.insert(slot.end(), t.begin(), t.end());
    });

    const std::uint64_t left_count = int_pow(n, left);
    auto chunk = [&](std::size_t lo, std::size_t hi) {
        std::vector<IndexTuple> hits;
        for_each_tuple(n, left, lo, hi - lo, [&](const IndexTuple& t) {
            const V target = -signed_sum(t, 0);
            const auto it = table.find(target);
            if (it == table.end()) return;
            const auto& flat = it->second;
            for (std::size_t s = 0; s < flat.size(); s += right) {
                IndexTuple full = t;
                full.insert(full.end(), flat.begin() + static_cast<std::ptrdiff_t>(s),
                            flat.begin() + static_cast<std::ptrdiff_t>(s + right));
                hits.push_back(std::move(full));
            }
        });
        return hits;
    };
    std::vector<IndexTuple> out;
    for (auto& part : map_chunks<std::vector<IndexTuple>>(static_cast<std::size_t>(left_count), chunk, workers))
        for (auto& h : part) out.push_back(std::move(h));
    return out;
}

}  // namespace sumprod::detail
