#pragma once

// Mason-Stothers (ABC) checking with its divisibility witness, the degree
// bound on a common factor among M-th powers, gcd reduction of signed power
// equations, and exhaustive searches for polynomial Fermat-type identities.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/detail/mitm.hpp"
#include "sumprod/polycore.hpp"

namespace sumprod {

// ---------------------------------------------------------------------------
// ABC

/// A B' - A' B.
inline Poly delta(const Poly& a, const Poly& b) { return a * b.derivative() - a.derivative() * b; }

struct MasonReport {
    int deg_a = 0;
    int deg_b = 0;
    int deg_c = 0;
    int k = 0;  // number of distinct roots of ABC
    bool holds = false;
    Poly delta;
    Poly witness;  // ABC / radical(ABC), monic
    bool witness_divides = false;
};

inline MasonReport abc_check(const Poly& a, const Poly& b) {
    require(!a.is_zero() && !b.is_zero(), "ABC check needs nonzero A and B");
    const Poly c = a + b;
    require(!c.is_zero(), "ABC check needs C = A + B nonzero");
    if (a.is_constant() && b.is_constant() && c.is_constant())
        throw Error(Errc::all_constant, "A, B and C are all constant");
    if (gcd(a, b).degree() > 0) throw Error(Errc::not_coprime, "A and B are not coprime");

    MasonReport r;
    r.deg_a = a.degree();
    r.deg_b = b.degree();
    r.deg_c = c.degree();
    const Poly abc = a * b * c;
    const Poly rad = radical(abc);
    r.k = rad.degree();
    r.holds = std::max({r.deg_a, r.deg_b, r.deg_c}) <= r.k - 1;
    r.delta = delta(a, b);
    // Coprime and not both constant forces A, B independent.
    if (r.delta.is_zero()) throw Error(Errc::precondition, "A B' - A' B vanished for coprime input");
    r.witness = exact_div(abc, rad).monic();
    r.witness_divides = divides(r.witness, r.delta);
    return r;
}

struct FermatVerdict {
    unsigned n = 0;
    int max_deg = 0;
    int k = 0;  // distinct roots of f g h
    bool consistent = false;
    std::string verdict;
};

/// For f^n + g^n = h^n with coprime f, g, h, ABC gives n max deg <= k - 1 < 3 max deg.
inline FermatVerdict fermat_degree_corollary(unsigned n, const Poly& f, const Poly& g, const Poly& h) {
    require(n >= 1, "exponent must be positive");
    require(!f.is_zero() && !g.is_zero() && !h.is_zero(), "bases must be nonzero");
    if (pow(f, n) + pow(g, n) != pow(h, n))
        throw Error(Errc::not_a_solution, "not a solution: f^n + g^n != h^n");
    const int constants = int(f.is_constant()) + int(g.is_constant()) + int(h.is_constant());
    if (constants > 1) throw Error(Errc::all_constant, "more than one of f, g, h is constant");
    if (gcd(f, g).degree() > 0 || gcd(f, h).degree() > 0 || gcd(g, h).degree() > 0)
        throw Error(Errc::not_coprime, "f, g, h are not pairwise coprime");

    FermatVerdict v;
    v.n = n;
    v.max_deg = std::max({f.degree(), g.degree(), h.degree()});
    v.k = radical(f * g * h).degree();
    v.consistent = static_cast<long>(n) * v.max_deg <= v.k - 1 && n <= 2;
    if (!v.consistent)
        v.verdict = "inconsistent";
    else if (n == 2)
        v.verdict = "consistent, n = 2 attains the bound";
    else
        v.verdict = "consistent";
    return v;
}

// ---------------------------------------------------------------------------
// exhaustive searches

template <class Base>
struct SearchSolution {
    std::vector<int> signs;
    std::vector<Base> bases;
    bool trivial = false;

    friend auto operator<=>(const SearchSolution&, const SearchSolution&) = default;
};

template <class Base>
struct SearchReport {
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t space_size = 0;
    std::vector<SearchSolution<Base>> solutions;  // sorted, one per orbit
    std::optional<double> elapsed_ms;

    std::size_t nontrivial_count() const {
        return static_cast<std::size_t>(
            std::count_if(solutions.begin(), solutions.end(), [](const auto& s) { return !s.trivial; }));
    }
};

inline constexpr std::uint64_t kDefaultMaxSpace = 10'000'000'000ULL;
inline constexpr std::uint64_t kDefaultMaxMemKeys = 20'000'000ULL;

namespace detail {

// b^e saturating at UINT64_MAX.
inline std::uint64_t sat_pow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (b != 0 && r > UINT64_MAX / b) return UINT64_MAX;
        r *= b;
    }
    return r;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline std::vector<int> parse_signs(const std::string& s) {
    std::vector<int> out;
    for (char c : s) {
        if (c == '+')
            out.push_back(1);
        else if (c == '-')
            out.push_back(-1);
        else if (c != ',' && c != ' ')
            throw Error(Errc::precondition, "sign string may contain only '+' and '-'");
    }
    return out;
}

inline std::string signs_to_string(const std::vector<int>& s) {
    std::string out;
    for (int e : s) out += e > 0 ? '+' : '-';
    return out;
}

inline Int integer_content(const Poly& f) {
    Int g = 0;
    for (const auto& c : f.coeffs()) g = ::gcd(g, Int(c.get_num()));
    return g;
}

}  // namespace detail

/// Integer polynomials of degree <= deg_max with |coeff| <= height and positive
/// (or unit, when monic) leading coefficient, in canonical order.
inline std::vector<Poly> integer_poly_family(unsigned deg_max, unsigned height, bool monic) {
    require(height >= 1, "height must be at least 1");
    std::vector<Poly> out;
    const long h = static_cast<long>(height);
    for (unsigned d = 0; d <= deg_max; ++d) {
        std::vector<long> c(d + 1, -h);
        const long lead_lo = 1, lead_hi = monic ? 1 : h;
        c[d] = lead_lo;
        for (;;) {
            out.emplace_back(std::vector<Rat>(c.begin(), c.end()));
            std::size_t p = 0;
            for (; p < d; ++p) {
                if (++c[p] <= h) break;
                c[p] = -h;
            }
            if (p == d && ++c[d] > lead_hi) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct PolySearchParams {
    unsigned k = 3;
    unsigned m = 2;
    unsigned deg_max = 2;
    unsigned height = 2;
    std::string signs = "all";  // "all" or an explicit pattern such as "++-"
    bool monic = false;
    std::uint64_t max_space = kDefaultMaxSpace;
    std::uint64_t max_mem_keys = kDefaultMaxMemKeys;
    unsigned workers = detail::worker_count();
};

namespace detail {

using SignedBase = std::pair<int, Poly>;

// Orders by base, then + before -.
inline bool signed_base_less(const SignedBase& a, const SignedBase& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first > b.first;
}

inline SearchSolution<Poly> canonical_poly_solution(std::vector<SignedBase> terms) {
    Int content = 0;
    for (const auto& [s, f] : terms) content = ::gcd(content, integer_content(f));
    if (content > 1)
        for (auto& t : terms) t.second *= Rat(Int(1), content);

    auto flipped = terms;
    for (auto& t : flipped) t.first = -t.first;
    std::sort(terms.begin(), terms.end(), signed_base_less);
    std::sort(flipped.begin(), flipped.end(), signed_base_less);
    if (std::lexicographical_compare(flipped.begin(), flipped.end(), terms.begin(), terms.end(), signed_base_less))
        terms = std::move(flipped);

    SearchSolution<Poly> s;
    for (auto& [e, f] : terms) {
        s.signs.push_back(e);
        s.bases.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < s.bases.size() && !s.trivial; ++i)
        for (std::size_t j = i + 1; j < s.bases.size(); ++j)
            if (is_scalar_multiple(s.bases[i], s.bases[j])) {
                s.trivial = true;
                break;
            }
    return s;
}

}  // namespace detail

/// Every solution of sum eps_i f_i^m = 0 over the bounded family, one per orbit
/// under reordering and common integer scaling.
inline SearchReport<Poly> fermat_poly_search(const PolySearchParams& p) {
    require(p.k >= 2 && p.k <= 4, "fermat-poly supports 2 <= k <= 4");
    require(p.m >= 1, "exponent must be positive");

    std::vector<std::vector<int>> sign_vectors;
    if (p.signs == "all") {
        for (unsigned mask = 0; mask < (1U << (p.k - 1)); ++mask) {
            std::vector<int> s{1};
            for (unsigned i = 0; i + 1 < p.k; ++i) s.push_back(mask >> i & 1U ? -1 : 1);
            sign_vectors.push_back(std::move(s));
        }
    } else {
        auto s = detail::parse_signs(p.signs);
        require(s.size() == p.k, "sign pattern length must equal k");
        sign_vectors.push_back(std::move(s));
    }

    const auto family = integer_poly_family(p.deg_max, p.height, p.monic);
    const std::uint64_t n = family.size();
    SearchReport<Poly> rep;
    rep.params = {{"k", std::to_string(p.k)},
                  {"m", std::to_string(p.m)},
                  {"deg_max", std::to_string(p.deg_max)},
                  {"height", std::to_string(p.height)},
                  {"signs", p.signs},
                  {"monic", p.monic ? "true" : "false"}};
    rep.space_size = detail::sat_mul(sign_vectors.size(), detail::sat_pow(n, p.k));
    if (rep.space_size > p.max_space) throw ResourceCapError("search space", p.max_space, rep.space_size);
    const std::uint64_t keys = detail::sat_pow(n, p.k - p.k / 2);
    if (keys > p.max_mem_keys) throw ResourceCapError("memory keys", p.max_mem_keys, keys);

    std::vector<Poly> powers;
    powers.reserve(family.size());
    for (const auto& f : family) powers.push_back(pow(f, p.m));

    std::set<SearchSolution<Poly>> found;
    for (const auto& signs : sign_vectors) {
        for (const auto& t : detail::zero_sum_tuples<Poly, PolyHash>(powers, signs, p.workers)) {
            std::vector<detail::SignedBase> terms;
            for (std::size_t i = 0; i < t.size(); ++i) terms.emplace_back(signs[i], family[t[i]]);
            found.insert(detail::canonical_poly_solution(std::move(terms)));
        }
    }
    rep.solutions.assign(found.begin(), found.end());
    return rep;
}

// ---------------------------------------------------------------------------
// degree bound for a common factor G among M-th powers

struct Lemma2Report {
    unsigned k = 0;
    unsigned M = 0;
    Rat eps;
    Rat D;
    Rat lhs;    // deg G
    Rat lower;  // eps D, the hypothesis deg G >= eps D
    Rat rhs;
    bool satisfiable = false;
};

/// k = |f_degs| + 1 terms; D = max(deg f_i, (M deg G + deg g_k) / M).
inline Lemma2Report lemma2_bound(const std::vector<unsigned>& f_degs, unsigned deg_g, unsigned deg_gk, unsigned M,
                                 const Rat& eps) {
    require(!f_degs.empty(), "need at least one f degree (k >= 2)");
    const unsigned k = static_cast<unsigned>(f_degs.size()) + 1;
    require(M + 2 > k, "M must exceed k - 2");
    require(eps > 0, "epsilon must be positive");

    Lemma2Report r;
    r.k = k;
    r.M = M;
    r.eps = eps;
    Rat sum_f = 0;
    r.D = Rat(deg_g) + make_rat(Int(deg_gk), Int(M));
    for (unsigned d : f_degs) {
        sum_f += d;
        r.D = std::max(r.D, Rat(d));
    }
    const Rat denom = Rat(M) - Rat(k) + 2;
    r.lhs = deg_g;
    r.lower = eps * r.D;
    r.rhs = (Rat(k) - 2) / denom * (sum_f - 1) + eps * Rat(M) * r.D / (2 * denom);
    r.satisfiable = r.lhs >= r.lower && r.lhs <= r.rhs;
    return r;
}

inline constexpr unsigned kLemma2Horizon = 100'000;

/// Smallest M > k - 2 at which the bound rules the configuration out, scanning
/// up to `horizon`.
inline std::optional<unsigned> lemma2_min_M(const std::vector<unsigned>& f_degs, unsigned deg_g, unsigned deg_gk,
                                            const Rat& eps, unsigned horizon = kLemma2Horizon) {
    require(!f_degs.empty(), "need at least one f degree (k >= 2)");
    const unsigned k = static_cast<unsigned>(f_degs.size()) + 1;
    for (unsigned M = k - 1; M <= horizon; ++M)
        if (!lemma2_bound(f_degs, deg_g, deg_gk, M, eps).satisfiable) return M;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// signed power equations and gcd reduction


/// sum_i sign_i * mult_i * base_i^exponent.
struct SignedPowerEquation {
    struct Term {
        int sign = 1;
        Poly base;
        unsigned mult = 1;

        friend bool operator==(const Term&, const Term&) = default;
    };
    std::vector<Term> terms;
    unsigned exponent = 1;

    Poly value() const {
        Poly acc;
        for (const auto& t : terms) acc += pow(t.base, exponent) * Rat(t.sign * static_cast<long>(t.mult));
        return acc;
    }

    /// Merges repeated bases into one term carrying a multiplicity; terms whose
    /// signed multiplicities cancel are dropped.
    SignedPowerEquation normalized() const {
        std::vector<std::pair<Poly, long>> acc;
        for (const auto& t : terms) {
            require(!t.base.is_zero(), "equation base must be nonzero");
            auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& a) { return a.first == t.base; });
            const long c = t.sign * static_cast<long>(t.mult);
            if (it == acc.end())
                acc.emplace_back(t.base, c);
            else
                it->second += c;
        }
        std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SignedPowerEquation out;
        out.exponent = exponent;
        for (auto& [b, c] : acc)
            if (c != 0) out.terms.push_back({c > 0 ? 1 : -1, std::move(b), static_cast<unsigned>(c > 0 ? c : -c)});
        return out;
    }

    friend bool operator==(const SignedPowerEquation&, const SignedPowerEquation&) = default;
};

/// g = gcd of all bases (monic); every base divided by g.
inline std::pair<Poly, SignedPowerEquation> remove_common_factor(const SignedPowerEquation& eq) {
    require(!eq.terms.empty(), "equation has no terms");
    Poly g;
    for (const auto& t : eq.terms) {
        require(!t.base.is_zero(), "equation base must be nonzero");
        g = g.is_zero() ? t.base.monic() : gcd(g, t.base);
    }
    SignedPowerEquation out = eq;
    for (auto& t : out.terms) t.base = exact_div(t.base, g);
    return {g, out};
}

/// A merged term G^M * g.
struct CompositeTerm {
    Poly G;
    Poly g;
};

/// Plain signed terms plus merged composites; the total is kept at zero.
struct ReductionState {
    std::vector<std::pair<int, Poly>> plain;
    std::vector<CompositeTerm> composites;
    unsigned exponent = 1;

    Poly value() const {
        Poly acc;
        for (const auto& [s, f] : plain) acc += pow(f, exponent) * Rat(s);
        for (const auto& c : composites) acc += pow(c.G, exponent) * c.g;
        return acc;
    }

    /// max(deg f_i, deg(G^M g) / M).
    Rat D() const {
        Rat d = 0;
        for (const auto& [s, f] : plain) d = std::max(d, Rat(f.degree()));
        for (const auto& c : composites)
            d = std::max(d, make_rat(Int(static_cast<long>(exponent) * c.G.degree() + c.g.degree()), Int(exponent)));
        return d;
    }

    static ReductionState from(const SignedPowerEquation& eq) {
        ReductionState s;
        s.exponent = eq.exponent;
        for (const auto& t : eq.terms)
            for (unsigned i = 0; i < t.mult; ++i) s.plain.emplace_back(t.sign, t.base);
        return s;
    }
};

struct ReductionStep {
    bool with_composite = false;  // first indexes a composite when set, else a plain term
    std::size_t first = 0;
    std::size_t second = 0;  // plain term index
    Poly G;
    Poly g;
    Rat threshold;
};

/// Merges the pair sharing the largest common factor of degree above the
/// threshold; empty when no pair qualifies.
inline std::optional<ReductionStep> gcd_reduction_step(ReductionState& st, const Rat& threshold) {
    require(st.value().is_zero(), "equation does not sum to zero");
    struct Cand {
        int deg;
        bool comp;
        std::size_t i, j;
        Poly G;
    };
    std::optional<Cand> best;
    auto consider = [&](bool comp, std::size_t i, std::size_t j, const Poly& a, const Poly& b) {
        Poly G = gcd(a, b);
        if (Rat(G.degree()) <= threshold) return;
        if (!best || G.degree() > best->deg) best = Cand{G.degree(), comp, i, j, std::move(G)};
    };
    for (std::size_t i = 0; i < st.plain.size(); ++i)
        for (std::size_t j = i + 1; j < st.plain.size(); ++j) consider(false, i, j, st.plain[i].second, st.plain[j].second);
    for (std::size_t c = 0; c < st.composites.size(); ++c)
        for (std::size_t j = 0; j < st.plain.size(); ++j) consider(true, c, j, st.composites[c].G, st.plain[j].second);
    if (!best) return std::nullopt;

    const unsigned M = st.exponent;
    ReductionStep step;
    step.with_composite = best->comp;
    step.first = best->i;
    step.second = best->j;
    step.G = best->G;
    step.threshold = threshold;
    const auto& [sj, fj] = st.plain[best->j];
    const Poly v = exact_div(fj, best->G);
    if (best->comp) {
        const CompositeTerm& c = st.composites[best->i];
        const Poly u = exact_div(c.G, best->G);
        step.g = pow(u, M) * c.g + pow(v, M) * Rat(sj);
    } else {
        const auto& [si, fi] = st.plain[best->i];
        const Poly u = exact_div(fi, best->G);
        step.g = pow(u, M) * Rat(si) + pow(v, M) * Rat(sj);
    }
    if (step.g.is_zero())
        throw Error(Errc::dependent_subfamily, "dependent subfamily: merged cofactor vanished");

    if (best->comp) {
        st.composites[best->i] = {step.G, step.g};
        st.plain.erase(st.plain.begin() + static_cast<std::ptrdiff_t>(best->j));
    } else {
        st.plain.erase(st.plain.begin() + static_cast<std::ptrdiff_t>(best->j));
        st.plain.erase(st.plain.begin() + static_cast<std::ptrdiff_t>(best->i));
        st.composites.push_back({step.G, step.g});
    }
    return step;
}

struct ReductionTrace {
    Poly common_factor;
    bool had_common_factor = false;
    std::vector<ReductionStep> steps;
    std::vector<Rat> eps_schedule;
    ReductionState terminal;
};

/// Repeated merging with eps_1 = eps / 2k and eps_{j+1} = eps_j / (2(k - j));
/// step j uses threshold eps_j D.
inline ReductionTrace gcd_reduction(const SignedPowerEquation& eq, const Rat& eps) {
    require(eps > 0, "epsilon must be positive");
    require(eq.value().is_zero(), "equation does not sum to zero");
    ReductionTrace tr;
    auto [g, reduced] = remove_common_factor(eq);
    tr.common_factor = g;
    tr.had_common_factor = g.degree() > 0;
    tr.terminal = ReductionState::from(reduced);
    const std::size_t k = tr.terminal.plain.size();
    Rat e = eps / (2 * static_cast<long>(k));
    for (std::size_t j = 1; j < k; ++j) {
        tr.eps_schedule.push_back(e);
        auto step = gcd_reduction_step(tr.terminal, e * tr.terminal.D());
        if (!step) break;
        tr.steps.push_back(std::move(*step));
        e /= 2 * static_cast<long>(k - j);
    }
    return tr;
}

}  // namespace sumprod
