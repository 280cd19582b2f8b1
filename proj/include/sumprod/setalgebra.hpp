#pragma once

// Finite-set algebra over Poly: sumsets, product sets, iterated and signed
// sets, ratio sets, doubling constants and a Pluennecke-Ruzsa verifier.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumprod/polycore.hpp"

namespace sumprod {

/// Default ceiling on the size of any intermediate set.
inline constexpr std::size_t kDefaultMaxSetSize = 4'000'000;

/// Deduplicated set of polynomials kept in canonical order.
class PolySet {
public:
    PolySet() = default;
    explicit PolySet(std::vector<Poly> elems) : e_(std::move(elems)) {
        std::sort(e_.begin(), e_.end());
        e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
    }
    PolySet(std::initializer_list<Poly> elems) : PolySet(std::vector<Poly>(elems)) {}

    std::size_t size() const noexcept { return e_.size(); }
    bool empty() const noexcept { return e_.empty(); }
    auto begin() const noexcept { return e_.begin(); }
    auto end() const noexcept { return e_.end(); }
    const Poly& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<Poly>& elems() const noexcept { return e_; }

    // Zero sorts first under the canonical key.
    bool has_zero() const noexcept { return !e_.empty() && e_.front().is_zero(); }

    bool contains(const Poly& p) const { return std::binary_search(e_.begin(), e_.end(), p); }
    std::optional<std::size_t> index_of(const Poly& p) const {
        auto it = std::lower_bound(e_.begin(), e_.end(), p);
        if (it == e_.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - e_.begin());
    }

    friend bool operator==(const PolySet&, const PolySet&) = default;

private:
    std::vector<Poly> e_;
};

namespace detail {

using PolyHashSet = std::unordered_set<Poly, PolyHash>;

inline PolySet to_set(PolyHashSet&& hs) {
    std::vector<Poly> v;
    v.reserve(hs.size());
    for (auto it = hs.begin(); it != hs.end();) {
        auto node = hs.extract(it++);
        v.push_back(std::move(node.value()));
    }
    return PolySet(std::move(v));
}

inline void check_cap(std::size_t requested, std::size_t cap) {
    if (requested > cap) throw ResourceCapError("set size", cap, requested);
}

template <class Op>
PolySet combine(const PolySet& a, const PolySet& b, Op op, bool commutative, std::size_t cap) {
    check_cap(a.size() * b.size(), cap);
    PolyHashSet out;
    out.reserve(a.size() * b.size());
    const bool symmetric = commutative && &a == &b;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = symmetric ? i : 0; j < b.size(); ++j) out.insert(op(a[i], b[j]));
    return to_set(std::move(out));
}

}  // namespace detail

inline PolySet sumset(const PolySet& a, const PolySet& b, std::size_t cap = kDefaultMaxSetSize) {
    return detail::combine(a, b, [](const Poly& f, const Poly& g) { return f + g; }, true, cap);
}

inline PolySet difference_set(const PolySet& a, const PolySet& b, std::size_t cap = kDefaultMaxSetSize) {
    return detail::combine(a, b, [](const Poly& f, const Poly& g) { return f - g; }, false, cap);
}

inline PolySet productset(const PolySet& a, const PolySet& b, std::size_t cap = kDefaultMaxSetSize) {
    require(!a.has_zero() && !b.has_zero(), "product set operand contains zero");
    return detail::combine(a, b, [](const Poly& f, const Poly& g) { return f * g; }, true, cap);
}

/// kS - lS, with 0S = {0}.
inline PolySet iterated_sum(const PolySet& s, unsigned k, unsigned l, std::size_t cap = kDefaultMaxSetSize) {
    require(k + l >= 1, "iterated sum needs k + l >= 1");
    require(!s.empty(), "iterated sum of empty set");
    auto multiple = [&](unsigned times) {
        PolySet acc{Poly{}};
        for (unsigned i = 0; i < times; ++i) acc = sumset(acc, s, cap);
        return acc;
    };
    const PolySet plus = multiple(k);
    const PolySet minus = multiple(l);
    return difference_set(plus, minus, cap);
}

/// S^m = S.S...S (m factors).
inline PolySet iterated_product(const PolySet& s, unsigned m, std::size_t cap = kDefaultMaxSetSize) {
    require(m >= 1, "iterated product needs m >= 1");
    PolySet acc = s;
    for (unsigned i = 1; i < m; ++i) acc = productset(acc, s, cap);
    return acc;
}

enum class IterMode { sum, product };

/// Unified entry: sums use (k, l) for kS - lS, products use k as the exponent.
inline PolySet iterated(const PolySet& s, unsigned k, unsigned l, IterMode mode,
                        std::size_t cap = kDefaultMaxSetSize) {
    return mode == IterMode::sum ? iterated_sum(s, k, l, cap) : iterated_product(s, k, cap);
}

/// All reduced quotients s/s', sorted and deduplicated.
inline std::vector<RatFunc> ratio_set(const PolySet& s) {
    require(!s.has_zero(), "ratio set of a set containing zero");
    std::unordered_set<RatFunc, RatFuncHash> seen;
    for (const auto& a : s)
        for (const auto& b : s) seen.insert(RatFunc(a, b));
    std::vector<RatFunc> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline Rat doubling_constant(const PolySet& s) {
    require(!s.empty(), "doubling constant of empty set");
    return make_rat(Int(static_cast<unsigned long>(sumset(s, s).size())), Int(static_cast<unsigned long>(s.size())));
}

struct PlunneckeReport {
    unsigned k = 0;
    unsigned l = 0;
    Rat K;
    std::size_t lhs = 0;
    Rat bound;
    bool holds = false;
};

/// Checks |kS - lS| <= K^(k+l) |S| exactly, with K = |S+S|/|S|.
inline PlunneckeReport plunnecke_check(const PolySet& s, unsigned k, unsigned l,
                                       std::size_t cap = kDefaultMaxSetSize) {
    require(!s.empty(), "Pluennecke check on empty set");
    require(k + l >= 1, "Pluennecke check needs k + l >= 1");
    PlunneckeReport r;
    r.k = k;
    r.l = l;
    r.K = doubling_constant(s);
    r.lhs = iterated_sum(s, k, l, cap).size();
    Rat kp(1);
    for (unsigned i = 0; i < k + l; ++i) kp *= r.K;
    r.bound = kp * static_cast<unsigned long>(s.size());
    r.holds = Rat(static_cast<unsigned long>(r.lhs)) <= r.bound;
    return r;
}

struct GrowthRow {
    unsigned l = 0;
    std::size_t power_size = 0;  // |S^l|
    std::size_t sum_size = 0;    // |lS|
};

struct GrowthReport {
    std::string label;
    std::size_t n = 0;
    std::size_t sum_size = 0;
    std::size_t prod_size = 0;
    Rat doubling;
    std::vector<GrowthRow> table;
};

inline GrowthReport growth_report(const PolySet& s, std::string label, unsigned l_max,
                                  std::size_t cap = kDefaultMaxSetSize) {
    require(!s.empty() && !s.has_zero(), "growth report needs a nonempty zero-free set");
    GrowthReport g;
    g.label = std::move(label);
    g.n = s.size();
    g.sum_size = sumset(s, s, cap).size();
    g.prod_size = productset(s, s, cap).size();
    g.doubling = make_rat(Int(static_cast<unsigned long>(g.sum_size)), Int(static_cast<unsigned long>(g.n)));
    PolySet pw = s, sm = s;
    for (unsigned l = 1; l <= l_max; ++l) {
        if (l > 1) {
            pw = productset(pw, s, cap);
            sm = sumset(sm, s, cap);
        }
        g.table.push_back({l, pw.size(), sm.size()});
    }
    return g;
}

// ---------------------------------------------------------------------------
// instance generators

inline PolySet ap_set(const Poly& start, const Poly& diff, std::size_t n) {
    require(!diff.is_zero(), "arithmetic progression with zero difference");
    require(n >= 1, "progression length must be positive");
    std::vector<Poly> v;
    Poly cur = start;
    for (std::size_t i = 0; i < n; ++i, cur += diff) v.push_back(cur);
    return PolySet(std::move(v));
}

inline PolySet gp_set(const Poly& start, const Poly& ratio, std::size_t n) {
    require(!start.is_zero(), "geometric progression starting at zero");
    require(!ratio.is_zero() && ratio != Poly::constant(1) && ratio != Poly::constant(-1),
            "geometric progression ratio must not be 0 or +-1");
    require(n >= 1, "progression length must be positive");
    std::vector<Poly> v;
    Poly cur = start;
    for (std::size_t i = 0; i < n; ++i, cur *= ratio) v.push_back(cur);
    return PolySet(std::move(v));
}

namespace detail {

// Uniform draw in [0, n) from a 64-bit engine, identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = g();
    while (v >= limit);
    return v % n;
}

inline long uniform_between(std::mt19937_64& g, long lo, long hi) {
    return lo + static_cast<long>(uniform_below(g, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline Poly random_poly(std::mt19937_64& g, int degree, long height, bool monic) {
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = uniform_between(g, -height, height);
    if (monic) c.back() = 1;
    return Poly(std::move(c));
}

}  // namespace detail

/// n distinct monic integer polynomials, degree uniform in [0, deg_max],
/// lower coefficients uniform in [-height_max, height_max].
inline PolySet random_monic_set(unsigned deg_max, unsigned height_max, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "random set size must be positive");
    std::mt19937_64 gen(seed);
    std::unordered_set<Poly, PolyHash> seen;
    std::vector<Poly> order;
    const std::uint64_t budget = 10'000ULL * n;
    for (std::uint64_t draws = 0; order.size() < n; ++draws) {
        if (draws >= budget)
            throw Error(Errc::precondition, "random_monic_set could not reach " + std::to_string(n) +
                                                " distinct elements in " + std::to_string(budget) + " draws");
        const int deg = static_cast<int>(detail::uniform_below(gen, deg_max + 1ULL));
        Poly p = detail::random_poly(gen, deg, static_cast<long>(height_max), true);
        if (seen.insert(p).second) order.push_back(std::move(p));
    }
    return PolySet(std::move(order));
}

}  // namespace sumprod
