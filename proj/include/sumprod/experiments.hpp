#pragma once

// Replays of the sum-product constructions on concrete sets: colliding pair
// sums and the quadruple system they induce, the good/bad multiplier count,
// quintuple extraction, exact audits of the 3x4 and 4x4 power matrices,
// averaging extraction for product sets, power saturation, and the integer
// equal-sums-of-like-powers search.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sumprod/detail/mitm.hpp"
#include "sumprod/mason.hpp"
#include "sumprod/setalgebra.hpp"
#include "sumprod/wronskian.hpp"

namespace sumprod {

// ---------------------------------------------------------------------------
// pairs, pairing, quadruples

/// Unordered pair of indices into a PolySet, i <= j.
struct UPair {
    std::size_t i = 0;
    std::size_t j = 0;
    friend auto operator<=>(const UPair&, const UPair&) = default;
};

using Quad = std::array<std::size_t, 4>;  // indices into S

struct QuadrupleSystem {
    PolySet S;
    std::vector<UPair> P;           // grouped by sum, canonical order inside a group
    std::vector<std::size_t> phi;   // phi[p] indexes P
    std::vector<Quad> Q;            // Q[p] = (P[p], P[phi[p]])

    Poly sum_of(const UPair& p) const { return S[p.i] + S[p.j]; }
};

/// Unordered pairs whose sum is shared with another unordered pair.
inline std::vector<UPair> build_pair_set(const PolySet& s) {
    require(s.size() >= 2, "pair set needs |S| >= 2");
    std::map<Poly, std::vector<UPair>> by_sum;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j) by_sum[s[i] + s[j]].push_back({i, j});
    std::vector<UPair> out;
    for (auto& [sum, cls] : by_sum)
        if (cls.size() >= 2) out.insert(out.end(), cls.begin(), cls.end());
    return out;
}

/// Cyclic shift inside each sum class: fixed-point free and sum preserving.
inline std::vector<std::size_t> build_pairing_phi(const PolySet& s, const std::vector<UPair>& P) {
    std::vector<std::size_t> phi(P.size());
    std::size_t lo = 0;
    while (lo < P.size()) {
        const Poly sum = s[P[lo].i] + s[P[lo].j];
        std::size_t hi = lo + 1;
        while (hi < P.size() && s[P[hi].i] + s[P[hi].j] == sum) ++hi;
        if (hi - lo < 2) throw Error(Errc::precondition, "sum class with a single pair admits no pairing");
        for (std::size_t p = lo; p < hi; ++p) phi[p] = p + 1 < hi ? p + 1 : lo;
        lo = hi;
    }
    return phi;
}

inline QuadrupleSystem build_quadruples(const PolySet& s) {
    QuadrupleSystem qs;
    qs.S = s;
    qs.P = build_pair_set(s);
    qs.phi = build_pairing_phi(s, qs.P);
    for (std::size_t p = 0; p < qs.P.size(); ++p) {
        const UPair& a = qs.P[p];
        const UPair& b = qs.P[qs.phi[p]];
        qs.Q.push_back({a.i, a.j, b.i, b.j});
    }
    return qs;
}

/// x1 + x2 - x3 - x4 = 0 and {x3, x4} != {x1, x2} for every quadruple; phi a
/// sum-preserving permutation without fixed points.
inline bool verify_quadruples(const QuadrupleSystem& qs) {
    if (qs.Q.size() != qs.P.size() || qs.phi.size() != qs.P.size()) return false;
    std::vector<std::size_t> image = qs.phi;
    std::sort(image.begin(), image.end());
    for (std::size_t p = 0; p < image.size(); ++p)
        if (image[p] != p || qs.phi[p] == p) return false;
    for (const auto& q : qs.Q) {
        const auto& S = qs.S;
        if (!(S[q[0]] + S[q[1]] - S[q[2]] - S[q[3]]).is_zero()) return false;
        if (q[0] == q[2] && q[1] == q[3]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// good / bad multipliers

/// Threshold below which a count marks a pair bad: either a fixed rational or
/// n^(1-eps)/40, the latter compared exactly through integer powers.
struct Cutoff {
    bool power_law_form = true;
    Rat value;
    Rat eps = make_rat(1, 4);

    static Cutoff fixed(const Rat& v) { return {false, v, 0}; }
    static Cutoff power_law(const Rat& eps) {
        require(eps >= 0 && eps <= 1, "epsilon must lie in [0, 1]");
        return {true, 0, eps};
    }

    bool below(std::size_t count, std::size_t n) const {
        if (!power_law_form) return Rat(static_cast<unsigned long>(count)) < value;
        // 40 c < n^(1-p/q)  <=>  (40 c)^q < n^(q-p)
        const unsigned long q = eps.get_den().get_ui(), p = eps.get_num().get_ui();
        Int lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), 40UL * count, q);
        mpz_ui_pow_ui(rhs.get_mpz_t(), n, q - p);
        return lhs < rhs;
    }

    std::string describe() const {
        return power_law_form ? "n^(1-" + rat_to_string(eps) + ")/40" : rat_to_string(value);
    }
};

struct GoodTable {
    std::size_t n = 0;
    unsigned M = 1;
    Cutoff cutoff;
    std::vector<std::size_t> counts;  // counts[x1 * n + t] = #{(a, t1): x1 t^M = a t1^M}
    std::vector<bool> good;
    std::size_t bad_pairs = 0;  // N

    std::size_t count(std::size_t x1, std::size_t t) const { return counts[x1 * n + t]; }
    bool is_good(std::size_t x1, std::size_t t) const { return good[x1 * n + t]; }
};

inline GoodTable good_t_analysis(const PolySet& s, unsigned M, const Cutoff& cutoff) {
    require(!s.empty() && !s.has_zero(), "good-t analysis needs a nonempty zero-free set");
    require(M >= 1, "M must be positive");
    const std::size_t n = s.size();
    std::vector<Poly> pw;
    for (const auto& x : s) pw.push_back(pow(x, M));
    std::unordered_map<Poly, std::size_t, PolyHash> hits;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t t1 = 0; t1 < n; ++t1) ++hits[s[a] * pw[t1]];

    GoodTable g;
    g.n = n;
    g.M = M;
    g.cutoff = cutoff;
    g.counts.resize(n * n);
    g.good.resize(n * n);
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t c = hits.at(s[x1] * pw[t]);
            g.counts[x1 * n + t] = c;
            g.good[x1 * n + t] = !cutoff.below(c, n);
            if (!g.good[x1 * n + t]) ++g.bad_pairs;
        }
    return g;
}

// ---------------------------------------------------------------------------
// quintuple extraction

struct QuintupleExtraction {
    std::size_t a = 0, b = 0, c = 0, d = 0, t = 0;  // indices into S
    unsigned M = 1;
    std::size_t good_for_t = 0;     // quadruples of Q for which t is good
    std::size_t supporting = 0;     // quadruples of Q realised through (a, b, c, d)
    std::vector<Quad> Qprime;       // (t1, t2, t3, t4) indices, sorted
    bool verified = false;
};

namespace detail {

// All (a, t1) with a t1^M = x t^M, as index pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> factor_pairs(
    const std::unordered_map<Poly, std::vector<std::pair<std::size_t, std::size_t>>, PolyHash>& by_value,
    const Poly& target) {
    const auto it = by_value.find(target);
    return it == by_value.end() ? std::vector<std::pair<std::size_t, std::size_t>>{} : it->second;
}

}  // namespace detail

/// Picks t good for the most quadruples, then (a, b, c, d) realising the most
/// of them; ties go to the smallest index. Q' collects the resulting (t1..t4).
inline QuintupleExtraction quintuple_extraction(const QuadrupleSystem& qs, unsigned M, const Cutoff& cutoff) {
    require(!qs.Q.empty(), "quintuple extraction needs a nonempty Q");
    const PolySet& S = qs.S;
    const std::size_t n = S.size();
    const GoodTable good = good_t_analysis(S, M, cutoff);

    QuintupleExtraction ex;
    ex.M = M;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t cnt = 0;
        for (const auto& q : qs.Q)
            if (std::all_of(q.begin(), q.end(), [&](std::size_t x) { return good.is_good(x, t); })) ++cnt;
        if (cnt > ex.good_for_t) ex.good_for_t = cnt, ex.t = t;
    }
    if (ex.good_for_t == 0) throw Error(Errc::precondition, "no multiplier t is good for any quadruple");

    std::vector<Poly> pw;
    for (const auto& x : S) pw.push_back(pow(x, M));
    std::unordered_map<Poly, std::vector<std::pair<std::size_t, std::size_t>>, PolyHash> by_value;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t t1 = 0; t1 < n; ++t1) by_value[S[a] * pw[t1]].emplace_back(a, t1);

    // For every good quadruple, the realisable (a,b,c,d) tuples and their (t1..t4).
    std::map<Quad, std::vector<Quad>> realised;  // (a,b,c,d) -> Q' members
    std::map<Quad, std::size_t> support;
    for (const auto& q : qs.Q) {
        if (!std::all_of(q.begin(), q.end(), [&](std::size_t x) { return good.is_good(x, ex.t); })) continue;
        std::array<std::vector<std::pair<std::size_t, std::size_t>>, 4> opts;
        for (std::size_t i = 0; i < 4; ++i) opts[i] = detail::factor_pairs(by_value, S[q[i]] * pw[ex.t]);
        std::set<Quad> seen_coeffs;
        for (const auto& [a, t1] : opts[0])
            for (const auto& [b, t2] : opts[1])
                for (const auto& [c, t3] : opts[2])
                    for (const auto& [d, t4] : opts[3]) {
                        const Quad coeffs{a, b, c, d};
                        realised[coeffs].push_back({t1, t2, t3, t4});
                        if (seen_coeffs.insert(coeffs).second) ++support[coeffs];
                    }
    }
    for (const auto& [coeffs, cnt] : support)
        if (cnt > ex.supporting) {
            ex.supporting = cnt;
            ex.a = coeffs[0], ex.b = coeffs[1], ex.c = coeffs[2], ex.d = coeffs[3];
        }
    auto& members = realised[{ex.a, ex.b, ex.c, ex.d}];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    ex.Qprime = members;

    ex.verified = std::all_of(ex.Qprime.begin(), ex.Qprime.end(), [&](const Quad& tq) {
        return (S[ex.a] * pw[tq[0]] + S[ex.b] * pw[tq[1]] - S[ex.c] * pw[tq[2]] - S[ex.d] * pw[tq[3]]).is_zero();
    });
    return ex;
}

// ---------------------------------------------------------------------------
// audits of T (3x4) and Gamma (4x4)

using PolyQuad = std::array<Poly, 4>;

inline PolyQuad quad_polys(const PolySet& S, const Quad& q) { return {S[q[0]], S[q[1]], S[q[2]], S[q[3]]}; }

struct MinorAudit {
    std::vector<std::size_t> cols;  // 1-based columns of T kept
    Poly det;
    bool singular = false;
    std::optional<MatchingReport> matching;
    std::optional<std::vector<Rat>> row_certificate;
};

struct SubmatrixAudit {
    unsigned M = 1;
    bool no1 = false;  // col2/col1 ratios pairwise distinct across rows
    bool no2 = false;  // col4/col3 ratios pairwise distinct across rows
    std::vector<MinorAudit> minors;
    bool all_nonsingular = false;
};

namespace detail {

inline bool ratios_distinct(const std::array<PolyQuad, 3>& rows, std::size_t num, std::size_t den) {
    std::array<RatFunc, 3> r{RatFunc(rows[0][num], rows[0][den]), RatFunc(rows[1][num], rows[1][den]),
                             RatFunc(rows[2][num], rows[2][den])};
    return r[0] != r[1] && r[0] != r[2] && r[1] != r[2];
}

}  // namespace detail

inline SubmatrixAudit submatrix_audit(const std::array<PolyQuad, 3>& rows, unsigned M) {
    require(M >= 1, "M must be positive");
    for (const auto& r : rows)
        for (const auto& e : r) require(!e.is_zero(), "quadruple entries must be nonzero");
    SubmatrixAudit a;
    a.M = M;
    a.no1 = detail::ratios_distinct(rows, 1, 0);
    a.no2 = detail::ratios_distinct(rows, 3, 2);

    PolyMatrix bases(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) bases(r, c) = rows[r][c];
    a.all_nonsingular = true;
    for (std::size_t drop = 4; drop-- > 0;) {
        std::vector<std::size_t> cols, labels;
        for (std::size_t c = 0; c < 4; ++c)
            if (c != drop) cols.push_back(c), labels.push_back(c + 1);
        MinorAudit m;
        m.cols = labels;
        const PowerMatrix pm(bases.select({0, 1, 2}, cols), M, labels);
        const PolyMatrix pw = pm.powered();
        m.det = det(pw);
        m.singular = m.det.is_zero();
        if (m.singular) {
            a.all_nonsingular = false;
            m.matching = analyze_power_matrix(pm);
            m.row_certificate = row_dependence(pw);
        }
        a.minors.push_back(std::move(m));
    }
    return a;
}

/// How one matched pair of Gamma's expansion ties the last row's entries.
struct EquationClass {
    std::size_t term_i = 0;
    std::size_t term_j = 0;
    std::size_t w_col_i = 0;  // 1-based column of the last row used by each term
    std::size_t w_col_j = 0;
    std::string kind;             // "atriple", "badalpha" or "theeight"
    std::optional<RatFunc> ratio;  // w_{col_j}^M / w_{col_i}^M for badalpha
};

struct GammaAudit {
    unsigned M = 1;
    bool kernel_ok = false;
    Poly det;
    bool singular = false;
    MatchingReport matching;
    std::vector<EquationClass> equations;
    std::array<std::size_t, 4> atriple_per_col{};
    bool atriple_pair = false;  // two same-column equations for one column
    bool nopair1 = false, nopair2 = false, nopair3 = false, nopair4 = false;
    bool notmany = false, notmany2 = false;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> theeight_per_pair;
    bool eight_on_one_pair = false;  // at least 8 equations tie the same column pair
};

/// coeffs = (a, b, c, d); each row must satisfy a w1^M + b w2^M - c w3^M - d w4^M = 0.
inline GammaAudit gamma_audit(const std::array<PolyQuad, 4>& rows, unsigned M, const PolyQuad& coeffs) {
    require(M >= 1, "M must be positive");
    PolyMatrix pw(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) pw(r, c) = pow(rows[r][c], M);
    const std::array<Poly, 4> kernel{coeffs[0], coeffs[1], -coeffs[2], -coeffs[3]};
    require(std::any_of(kernel.begin(), kernel.end(), [](const Poly& p) { return !p.is_zero(); }),
            "kernel vector must be nonzero");

    GammaAudit g;
    g.M = M;
    g.kernel_ok = true;
    for (std::size_t r = 0; r < 4; ++r) {
        Poly acc;
        for (std::size_t c = 0; c < 4; ++c) acc += pw(r, c) * kernel[c];
        if (!acc.is_zero()) g.kernel_ok = false;
    }
    require(g.kernel_ok, "a row does not satisfy the signed four-term identity");
    g.det = det(pw);
    g.singular = g.det.is_zero();
    g.matching = find_cancellation_matching(expand_det_terms(pw));

    auto pair_key = [](std::size_t x, std::size_t y) { return std::pair(std::min(x, y), std::max(x, y)); };
    std::set<std::pair<std::size_t, std::size_t>> eight_pairs;
    for (const auto& [i, j] : g.matching.matched_pairs) {
        EquationClass e;
        e.term_i = i;
        e.term_j = j;
        e.w_col_i = g.matching.terms[i].factors[3].second + 1;
        e.w_col_j = g.matching.terms[j].factors[3].second + 1;
        const auto key = pair_key(e.w_col_i, e.w_col_j);
        if (e.w_col_i == e.w_col_j) {
            e.kind = "atriple";
            ++g.atriple_per_col[e.w_col_i - 1];
        } else if (key == std::pair<std::size_t, std::size_t>{1, 2} || key == std::pair<std::size_t, std::size_t>{3, 4}) {
            e.kind = "badalpha";
            e.ratio = RatFunc(pw(3, e.w_col_j - 1), pw(3, e.w_col_i - 1));
        } else {
            e.kind = "theeight";
            ++g.theeight_per_pair[key];
            eight_pairs.insert(key);
        }
        g.equations.push_back(std::move(e));
    }
    g.atriple_pair = std::any_of(g.atriple_per_col.begin(), g.atriple_per_col.end(), [](std::size_t c) { return c >= 2; });
    auto has = [&](std::size_t x, std::size_t y) { return eight_pairs.contains(pair_key(x, y)); };
    g.nopair1 = has(1, 3) && has(1, 4);
    g.nopair2 = has(2, 3) && has(2, 4);
    g.nopair3 = has(1, 3) && has(2, 3);
    g.nopair4 = has(1, 4) && has(2, 4);
    g.notmany = has(1, 3) && has(2, 4);
    g.notmany2 = has(1, 4) && has(2, 3);
    for (const auto& [k, cnt] : g.theeight_per_pair)
        if (cnt >= 8) g.eight_on_one_pair = true;
    return g;
}

// ---------------------------------------------------------------------------
// staged replay

struct ReplayReport {
    QuadrupleSystem qs;
    unsigned M = 1;
    std::optional<QuintupleExtraction> extraction;
    std::optional<std::array<std::size_t, 3>> audit_rows;  // indices into Q'
    std::optional<SubmatrixAudit> submatrix;
    std::vector<std::array<std::size_t, 4>> gamma_rows;  // indices into Q'
    std::vector<GammaAudit> gammas;
};

inline constexpr std::size_t kDefaultGammaSelections = 64;

/// Builds Q, extracts Q', audits the first row triple satisfying both ratio
/// conditions (or the first triple), and audits Gamma on the first
/// `gamma_limit` four-row selections in lexicographic order.
inline ReplayReport replay(const PolySet& s, unsigned M, const Cutoff& cutoff,
                           std::size_t gamma_limit = kDefaultGammaSelections) {
    ReplayReport rep;
    rep.M = M;
    rep.qs = build_quadruples(s);
    if (rep.qs.Q.empty()) return rep;
    rep.extraction = quintuple_extraction(rep.qs, M, cutoff);
    const auto& ex = *rep.extraction;
    const auto& Qp = ex.Qprime;
    const PolySet& S = rep.qs.S;

    if (Qp.size() >= 3) {
        std::optional<std::array<std::size_t, 3>> first;
        for (std::size_t i = 0; i < Qp.size() && !rep.audit_rows; ++i)
            for (std::size_t j = i + 1; j < Qp.size() && !rep.audit_rows; ++j)
                for (std::size_t k = j + 1; k < Qp.size(); ++k) {
                    const std::array<PolyQuad, 3> rows{quad_polys(S, Qp[i]), quad_polys(S, Qp[j]), quad_polys(S, Qp[k])};
                    if (!first) first = {i, j, k};
                    if (detail::ratios_distinct(rows, 1, 0) && detail::ratios_distinct(rows, 3, 2)) {
                        rep.audit_rows = {i, j, k};
                        break;
                    }
                }
        if (!rep.audit_rows) rep.audit_rows = first;
        const auto& ar = *rep.audit_rows;
        rep.submatrix = submatrix_audit({quad_polys(S, Qp[ar[0]]), quad_polys(S, Qp[ar[1]]), quad_polys(S, Qp[ar[2]])}, M);
    }

    const PolyQuad coeffs{S[ex.a], S[ex.b], S[ex.c], S[ex.d]};
    for (std::size_t i = 0; i < Qp.size() && rep.gammas.size() < gamma_limit; ++i)
        for (std::size_t j = i + 1; j < Qp.size() && rep.gammas.size() < gamma_limit; ++j)
            for (std::size_t k = j + 1; k < Qp.size() && rep.gammas.size() < gamma_limit; ++k)
                for (std::size_t l = k + 1; l < Qp.size() && rep.gammas.size() < gamma_limit; ++l) {
                    rep.gamma_rows.push_back({i, j, k, l});
                    rep.gammas.push_back(gamma_audit(
                        {quad_polys(S, Qp[i]), quad_polys(S, Qp[j]), quad_polys(S, Qp[k]), quad_polys(S, Qp[l])}, M,
                        coeffs));
                }
    return rep;
}

// ---------------------------------------------------------------------------
// averaging extraction

/// {p^M : p in S^t}.
inline PolySet power_image_set(const PolySet& s, unsigned M, unsigned t, std::size_t cap = kDefaultMaxSetSize) {
    require(M >= 1 && t >= 1, "M and t must be positive");
    const PolySet st = iterated_product(s, t, cap);
    std::vector<Poly> v;
    v.reserve(st.size());
    for (const auto& p : st) v.push_back(pow(p, M));
    return PolySet(std::move(v));
}

struct AveragingReport {
    std::size_t quadruple_count = 0;  // #{(s, s', r, r') : r s = r' s'}
    std::size_t s = 0;                // index into S
    std::size_t r_prime = 0;          // index into R
    std::vector<std::size_t> s_prime;  // indices into S
};

inline AveragingReport averaging_extraction(const PolySet& R, const PolySet& S) {
    require(!R.empty() && !S.empty() && !R.has_zero() && !S.has_zero(), "averaging needs nonempty zero-free sets");
    std::unordered_map<Poly, std::size_t, PolyHash> mult;
    for (const auto& r : R)
        for (const auto& s : S) ++mult[r * s];
    AveragingReport rep;
    for (const auto& [v, c] : mult) rep.quadruple_count += c * c;

    // For fixed (s, r'), s' determines r = r' s' / s; count the s' for which it lies in R.
    std::size_t best = 0;
    bool have = false;
    for (std::size_t si = 0; si < S.size(); ++si)
        for (std::size_t ri = 0; ri < R.size(); ++ri) {
            std::vector<std::size_t> sp;
            for (std::size_t sj = 0; sj < S.size(); ++sj) {
                auto [q, rem] = divmod(R[ri] * S[sj], S[si]);
                if (rem.is_zero() && R.contains(q)) sp.push_back(sj);
            }
            if (!have || sp.size() > best) {
                have = true;
                best = sp.size();
                rep.s = si;
                rep.r_prime = ri;
                rep.s_prime = std::move(sp);
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// power saturation

struct SaturationReport {
    unsigned M = 1;
    Rat eps;
    std::vector<std::size_t> sizes;  // sizes[j-1] = |S^j|
    std::optional<unsigned> witness_t;
};

/// First t >= 1 with |S^t|^(1+eps) >= |S^(Mt+1)| and Mt + 1 <= l_max, compared
/// exactly as |S^t|^(q+p) >= |S^(Mt+1)|^q for eps = p/q.
inline SaturationReport power_saturation(const PolySet& s, unsigned M, unsigned l_max, const Rat& eps,
                                         std::size_t cap = kDefaultMaxSetSize) {
    require(!s.empty() && !s.has_zero(), "saturation needs a nonempty zero-free set");
    require(M >= 1 && l_max >= 1, "M and l_max must be positive");
    require(eps >= 0, "epsilon must be nonnegative");
    SaturationReport rep;
    rep.M = M;
    rep.eps = eps;
    PolySet pw = s;
    rep.sizes.push_back(pw.size());
    for (unsigned j = 2; j <= l_max; ++j) {
        pw = productset(pw, s, cap);
        rep.sizes.push_back(pw.size());
    }
    const unsigned long p = eps.get_num().get_ui(), q = eps.get_den().get_ui();
    for (unsigned t = 1; static_cast<unsigned long>(M) * t + 1 <= l_max; ++t) {
        Int lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), rep.sizes[t - 1], q + p);
        mpz_ui_pow_ui(rhs.get_mpz_t(), rep.sizes[M * t], q);
        if (lhs >= rhs) {
            rep.witness_t = t;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// integer search

struct IntSearchSpec {
    unsigned k = 4;
    unsigned m = 3;
    unsigned H = 12;
    std::string signs = "++--";
    std::uint64_t max_space = kDefaultMaxSpace;
    std::uint64_t max_mem_keys = kDefaultMaxMemKeys;
    unsigned workers = detail::worker_count();
};

struct IntHash {
    std::size_t operator()(const Int& z) const { return hash_value(z); }
};

namespace detail {

inline SearchSolution<Int> canonical_int_solution(std::vector<long> pos, std::vector<long> neg) {
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    if (pos.size() == neg.size() && neg < pos) std::swap(pos, neg);
    SearchSolution<Int> s;
    s.trivial = pos == neg;
    for (long x : pos) s.signs.push_back(1), s.bases.emplace_back(x);
    for (long x : neg) s.signs.push_back(-1), s.bases.emplace_back(x);
    return s;
}

}  // namespace detail

/// All solutions of sum eps_i x_i^m = 0 with 1 <= x_i <= H, one per
/// rearrangement orbit; trivial when the positive and negative multisets agree.
inline SearchReport<Int> fermat_integer_search(const IntSearchSpec& spec) {
    require(spec.k >= 2 && spec.k <= 6, "fermat-int supports 2 <= k <= 6");
    require(spec.m >= 1 && spec.H >= 1, "m and H must be positive");
    const auto signs = detail::parse_signs(spec.signs);
    require(signs.size() == spec.k, "sign pattern length must equal k");

    SearchReport<Int> rep;
    rep.params = {{"k", std::to_string(spec.k)},
                  {"m", std::to_string(spec.m)},
                  {"H", std::to_string(spec.H)},
                  {"signs", detail::signs_to_string(signs)}};
    rep.space_size = detail::sat_pow(spec.H, spec.k);
    if (rep.space_size > spec.max_space) throw ResourceCapError("search space", spec.max_space, rep.space_size);
    const std::uint64_t keys = detail::sat_pow(spec.H, spec.k - spec.k / 2);
    if (keys > spec.max_mem_keys) throw ResourceCapError("memory keys", spec.max_mem_keys, keys);

    std::vector<Int> powers;
    for (unsigned x = 1; x <= spec.H; ++x) {
        Int v;
        mpz_ui_pow_ui(v.get_mpz_t(), x, spec.m);
        powers.push_back(v);
    }
    std::set<SearchSolution<Int>> found;
    for (const auto& t : detail::zero_sum_tuples<Int, IntHash>(powers, signs, spec.workers)) {
        std::vector<long> pos, neg;
        for (std::size_t i = 0; i < t.size(); ++i) (signs[i] > 0 ? pos : neg).push_back(static_cast<long>(t[i]) + 1);
        found.insert(detail::canonical_int_solution(std::move(pos), std::move(neg)));
    }
    rep.solutions.assign(found.begin(), found.end());
    return rep;
}

}  // namespace sumprod
