#pragma once

// JSON, CSV and plain-text renderings of every report. Field order is fixed
// (ordered_json), polynomials are arrays of coefficient strings lowest degree
// first, rationals are "num/den" strings ("n" for integers), search integers
// are JSON numbers when they fit in a long.

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumprod/experiments.hpp"
#include "sumprod/mason.hpp"
#include "sumprod/setalgebra.hpp"
#include "sumprod/wronskian.hpp"

namespace sumprod::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& r) { return rat_to_string(r); }
inline Json to_json(const Int& z) { return z.fits_slong_p() ? Json(z.get_si()) : Json(z.get_str()); }

inline Json to_json(const Poly& f) {
    Json a = Json::array();
    for (const auto& c : f.coeffs()) a.push_back(rat_to_string(c));
    return a;
}

inline Json to_json(const RatFunc& r) { return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

template <class T>
Json to_json_array(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const PolyMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const PolySet& s) { return to_json_array(s.elems()); }

// ---------------------------------------------------------------------------
// setalgebra

inline Json to_json(const GrowthReport& g) {
    Json table = Json::array();
    for (const auto& row : g.table) table.push_back({{"l", row.l}, {"power_size", row.power_size}, {"sum_size", row.sum_size}});
    return {{"label", g.label},     {"n", g.n},
            {"sum_size", g.sum_size}, {"prod_size", g.prod_size},
            {"doubling", to_json(g.doubling)}, {"table", std::move(table)}};
}

inline Json to_json(const PlunneckeReport& r) {
    return {{"k", r.k}, {"l", r.l}, {"K", to_json(r.K)}, {"lhs", r.lhs}, {"bound", to_json(r.bound)}, {"holds", r.holds}};
}

/// One header row, then one row per report; every report must share l_max.
inline void write_growth_csv(std::ostream& os, const std::vector<GrowthReport>& reports) {
    const std::size_t L = reports.empty() ? 0 : reports.front().table.size();
    os << "label,n,sum_size,prod_size";
    for (std::size_t l = 1; l <= L; ++l) os << ",pow_" << l;
    for (std::size_t l = 1; l <= L; ++l) os << ",sum_" << l;
    os << '\n';
    for (const auto& g : reports) {
        require(g.table.size() == L, "growth rows must share l_max");
        os << g.label << ',' << g.n << ',' << g.sum_size << ',' << g.prod_size;
        for (const auto& row : g.table) os << ',' << row.power_size;
        for (const auto& row : g.table) os << ',' << row.sum_size;
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// wronskian

inline Json to_json(const SignedTerm& t) {
    Json pos = Json::array();
    for (const auto& [r, c] : t.factors) pos.push_back({r + 1, c + 1});
    return {{"sign", t.sign}, {"positions", std::move(pos)}, {"product", to_json(t.product)}};
}

inline Json to_json(const RatioChain& c) {
    return {{"col_from", c.col_from}, {"col_to", c.col_to}, {"ratio", to_json(c.ratio)}, {"text", c.text}};
}

inline Json to_json(const MatchingReport& m) {
    Json terms = Json::array();
    for (const auto& t : m.terms) terms.push_back(to_json(t));
    Json pairs = Json::array();
    for (const auto& [i, j] : m.matched_pairs) pairs.push_back({i, j});
    Json cands = Json::array();
    for (const auto& c : m.candidates) {
        Json ps = Json::array();
        for (const auto& [i, j] : c.pairs) ps.push_back({i, j});
        cands.push_back({{"pairs", std::move(ps)}, {"holding", c.holding}, {"all_hold", c.all_hold}});
    }
    Json chains = Json::array();
    for (const auto& c : m.chains) chains.push_back(to_json(c));
    return {{"terms", std::move(terms)},
            {"matched_pairs", std::move(pairs)},
            {"residual", to_json(m.residual)},
            {"perfect", m.perfect},
            {"candidates", std::move(cands)},
            {"chains", std::move(chains)}};
}

// ---------------------------------------------------------------------------
// mason

inline Json to_json(const MasonReport& r) {
    return {{"deg_a", r.deg_a},     {"deg_b", r.deg_b},     {"deg_c", r.deg_c},
            {"k", r.k},             {"holds", r.holds},     {"delta", to_json(r.delta)},
            {"witness", to_json(r.witness)}, {"witness_divides", r.witness_divides}};
}

inline Json to_json(const FermatVerdict& v) {
    return {{"n", v.n}, {"max_deg", v.max_deg}, {"k", v.k}, {"consistent", v.consistent}, {"verdict", v.verdict}};
}

template <class Base>
Json to_json(const SearchReport<Base>& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    Json sols = Json::array();
    for (const auto& s : r.solutions)
        sols.push_back({{"signs", detail::signs_to_string(s.signs)}, {"bases", to_json_array(s.bases)}, {"trivial", s.trivial}});
    Json j = {{"params", std::move(params)},
              {"space_size", r.space_size},
              {"solution_count", r.solutions.size()},
              {"nontrivial_count", r.nontrivial_count()},
              {"solutions", std::move(sols)}};
    if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
    return j;
}

inline Json to_json(const Lemma2Report& r) {
    return {{"k", r.k},         {"M", r.M},         {"eps", to_json(r.eps)},
            {"D", to_json(r.D)}, {"lhs", to_json(r.lhs)}, {"lower", to_json(r.lower)},
            {"rhs", to_json(r.rhs)}, {"satisfiable", r.satisfiable}};
}

// ---------------------------------------------------------------------------
// experiments

inline Json quad_json(const Quad& q) { return {q[0], q[1], q[2], q[3]}; }

inline Json to_json(const QuadrupleSystem& qs) {
    Json P = Json::array();
    for (const auto& p : qs.P) P.push_back({p.i, p.j});
    Json Q = Json::array();
    for (const auto& q : qs.Q) Q.push_back(quad_json(q));
    return {{"S", to_json(qs.S)}, {"P", std::move(P)}, {"phi", qs.phi}, {"Q", std::move(Q)}};
}

inline Json to_json(const QuintupleExtraction& ex) {
    Json qp = Json::array();
    for (const auto& q : ex.Qprime) qp.push_back(quad_json(q));
    return {{"a", ex.a},
            {"b", ex.b},
            {"c", ex.c},
            {"d", ex.d},
            {"t", ex.t},
            {"M", ex.M},
            {"good_for_t", ex.good_for_t},
            {"supporting", ex.supporting},
            {"Qprime", std::move(qp)},
            {"verified", ex.verified}};
}

inline Json to_json(const MinorAudit& m) {
    Json j = {{"cols", m.cols}, {"det", to_json(m.det)}, {"singular", m.singular}};
    j["matching"] = m.matching ? to_json(*m.matching) : Json(nullptr);
    j["row_certificate"] = m.row_certificate ? to_json_array(*m.row_certificate) : Json(nullptr);
    return j;
}

inline Json to_json(const SubmatrixAudit& a) {
    Json minors = Json::array();
    for (const auto& m : a.minors) minors.push_back(to_json(m));
    return {{"M", a.M}, {"no1", a.no1}, {"no2", a.no2}, {"all_nonsingular", a.all_nonsingular}, {"minors", std::move(minors)}};
}

inline Json to_json(const GammaAudit& g) {
    Json eqs = Json::array();
    for (const auto& e : g.equations) {
        Json j = {{"terms", {e.term_i, e.term_j}}, {"w_cols", {e.w_col_i, e.w_col_j}}, {"kind", e.kind}};
        j["ratio"] = e.ratio ? to_json(*e.ratio) : Json(nullptr);
        eqs.push_back(std::move(j));
    }
    Json per_pair = Json::array();
    for (const auto& [k, c] : g.theeight_per_pair) per_pair.push_back({{"cols", {k.first, k.second}}, {"count", c}});
    return {{"M", g.M},
            {"kernel_ok", g.kernel_ok},
            {"det", to_json(g.det)},
            {"singular", g.singular},
            {"matched_pairs", g.matching.matched_pairs.size()},
            {"perfect", g.matching.perfect},
            {"equations", std::move(eqs)},
            {"atriple_per_col", g.atriple_per_col},
            {"atriple_pair", g.atriple_pair},
            {"nopair", {g.nopair1, g.nopair2, g.nopair3, g.nopair4}},
            {"notmany", g.notmany},
            {"notmany2", g.notmany2},
            {"theeight_per_pair", std::move(per_pair)},
            {"eight_on_one_pair", g.eight_on_one_pair}};
}

inline Json to_json(const ReplayReport& r) {
    Json j = {{"M", r.M}, {"system", to_json(r.qs)}};
    j["extraction"] = r.extraction ? to_json(*r.extraction) : Json(nullptr);
    j["audit_rows"] = r.audit_rows ? Json(*r.audit_rows) : Json(nullptr);
    j["submatrix"] = r.submatrix ? to_json(*r.submatrix) : Json(nullptr);
    Json gammas = Json::array();
    for (std::size_t i = 0; i < r.gammas.size(); ++i)
        gammas.push_back({{"rows", r.gamma_rows[i]}, {"audit", to_json(r.gammas[i])}});
    j["gammas"] = std::move(gammas);
    return j;
}

inline Json to_json(const AveragingReport& a) {
    return {{"quadruple_count", a.quadruple_count}, {"s", a.s}, {"r_prime", a.r_prime}, {"s_prime", a.s_prime}};
}

inline Json to_json(const SaturationReport& s) {
    Json j = {{"M", s.M}, {"eps", to_json(s.eps)}, {"sizes", s.sizes}};
    j["witness_t"] = s.witness_t ? Json(*s.witness_t) : Json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// text

namespace detail {

inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline bool all_scalars(const Json& v) {
    for (const auto& e : v)
        if (e.is_structured()) return false;
    return true;
}

inline void write_text(std::ostream& os, const Json& v, const std::string& path) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) write_text(os, x, path.empty() ? k : path + "." + k);
    } else if (v.is_array() && all_scalars(v)) {
        os << path << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
    } else if (v.is_array()) {
        std::size_t i = 0;
        for (const auto& x : v) write_text(os, x, path + "[" + std::to_string(i++) + "]");
    } else {
        os << path << ": " << scalar_text(v) << '\n';
    }
}

}  // namespace detail

/// One "path: value" line per leaf; arrays of scalars stay on one line.
inline void write_text(std::ostream& os, const Json& v) { detail::write_text(os, v, ""); }

}  // namespace sumprod::io
