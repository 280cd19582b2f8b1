#pragma once

// Exact polynomial matrices: Wronskians, determinants, linear-dependence
// certificates, and the term-by-term cancellation analysis of determinant
// expansions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/polycore.hpp"

namespace sumprod {

class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {
        require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    }
    explicit PolyMatrix(const std::vector<std::vector<Poly>>& rows) : PolyMatrix(rows.size(), rows.empty() ? 0 : rows[0].size()) {
        for (std::size_t r = 0; r < rows_; ++r) {
            require(rows[r].size() == cols_, "ragged matrix rows");
            for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = rows[r][c];
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Poly& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Poly& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }

    /// Keeps the listed rows and columns, in the given order.
    PolyMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        PolyMatrix out(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) out(i, j) = (*this)(rs[i], cs[j]);
        return out;
    }

    PolyMatrix map_entries(unsigned long exponent) const {
        PolyMatrix out = *this;
        for (auto& p : out.e_) p = pow(p, exponent);
        return out;
    }

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Poly> e_;
};

/// Row r holds the r-th derivatives of the family.
inline PolyMatrix wronskian_matrix(std::span<const Poly> fs) {
    require(!fs.empty(), "Wronskian of an empty family");
    for (const auto& f : fs) require(!f.is_zero(), "Wronskian family contains the zero polynomial");
    const std::size_t l = fs.size();
    PolyMatrix w(l, l);
    for (std::size_t c = 0; c < l; ++c) {
        Poly d = fs[c];
        for (std::size_t r = 0; r < l; ++r) {
            w(r, c) = d;
            d = d.derivative();
        }
    }
    return w;
}

inline Poly det_cofactor(const PolyMatrix& m) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Poly acc;
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (j != c) cols.push_back(j);
        Poly term = m(0, c) * det_cofactor(m.select(rest, cols));
        if (c % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

/// Fraction-free elimination; every division is exact in Q[x].
inline Poly det_bareiss(PolyMatrix m) {
    require(m.is_square(), "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    bool negate = false;
    Poly prev = Poly::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return {};
            m.swap_rows(k, p);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
            m(i, k) = Poly{};
        }
        prev = m(k, k);
    }
    return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

/// Cofactor expansion up to 4x4, fraction-free elimination above.
inline Poly det(const PolyMatrix& m) {
    require(m.is_square(), "determinant of a non-square matrix");
    return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

// ---------------------------------------------------------------------------
// linear dependence over the constants

namespace detail {

// Columns are vectors over Q (all the same length). Returns the nullspace
// vector attached to the first free column of the reduced row echelon form,
// scaled so its first nonzero entry is 1.
inline std::optional<std::vector<Rat>> first_null_vector(const std::vector<std::vector<Rat>>& columns) {
    const std::size_t ncols = columns.size();
    const std::size_t nrows = ncols == 0 ? 0 : columns[0].size();
    std::vector<std::vector<Rat>> a(nrows, std::vector<Rat>(ncols));
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t r = 0; r < nrows; ++r) a[r][c] = columns[c][r];

    std::vector<std::size_t> pivot_col_of_row;
    std::optional<std::size_t> free_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        std::size_t p = row;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) {
            free_col = c;
            break;
        }
        std::swap(a[p], a[row]);
        const Rat inv = 1 / a[row][c];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == row || a[r][c] == 0) continue;
            const Rat f = a[r][c];
            for (std::size_t j = 0; j < ncols; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_col_of_row.push_back(c);
        ++row;
    }
    if (!free_col) return std::nullopt;

    std::vector<Rat> alpha(ncols);
    alpha[*free_col] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) alpha[pivot_col_of_row[r]] = -a[r][*free_col];
    const auto first = std::find_if(alpha.begin(), alpha.end(), [](const Rat& x) { return x != 0; });
    const Rat inv = 1 / *first;
    for (auto& x : alpha) x *= inv;
    return alpha;
}

}  // namespace detail

/// Constants alpha, first nonzero entry 1, with sum alpha_i f_i = 0; empty when
/// the family is linearly independent.
inline std::optional<std::vector<Rat>> dependence_certificate(std::span<const Poly> fs) {
    require(!fs.empty(), "dependence certificate of an empty family");
    int max_deg = 0;
    for (const auto& f : fs) {
        require(!f.is_zero(), "dependence certificate family contains the zero polynomial");
        max_deg = std::max(max_deg, f.degree());
    }
    std::vector<std::vector<Rat>> cols;
    for (const auto& f : fs) {
        std::vector<Rat> v(static_cast<std::size_t>(max_deg) + 1);
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) v[i] = f.coeffs()[i];
        cols.push_back(std::move(v));
    }
    return detail::first_null_vector(cols);
}

/// Dependence over Q among the rows of a matrix, each row read as a vector of polynomials.
inline std::optional<std::vector<Rat>> row_dependence(const PolyMatrix& m) {
    int max_deg = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) max_deg = std::max(max_deg, m(r, c).degree());
    const std::size_t stride = static_cast<std::size_t>(max_deg) + 1;
    std::vector<std::vector<Rat>> cols;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<Rat> v(stride * m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto co = m(r, c).coeffs();
            for (std::size_t i = 0; i < co.size(); ++i) v[c * stride + i] = co[i];
        }
        cols.push_back(std::move(v));
    }
    return detail::first_null_vector(cols);
}

inline bool verify_certificate(std::span<const Poly> fs, std::span<const Rat> alpha) {
    if (fs.size() != alpha.size()) return false;
    Poly acc;
    for (std::size_t i = 0; i < fs.size(); ++i) acc += fs[i] * alpha[i];
    return acc.is_zero() && std::any_of(alpha.begin(), alpha.end(), [](const Rat& a) { return a != 0; });
}

// ---------------------------------------------------------------------------
// determinant expansion and cancellation matching

using Position = std::pair<std::size_t, std::size_t>;

/// One signed permutation product of a determinant expansion.
struct SignedTerm {
    int sign = 1;
    std::vector<Position> factors;  // (row, col), one per row
    Poly product;                   // sign times the product of the selected entries
};

inline constexpr std::size_t kMaxExpansionOrder = 5;

inline int permutation_sign(const std::vector<std::size_t>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// All n! terms, permutations in lexicographic order.
inline std::vector<SignedTerm> expand_det_terms(const PolyMatrix& m) {
    require(m.is_square(), "expansion of a non-square matrix");
    require(m.rows() <= kMaxExpansionOrder, "term expansion limited to 5x5");
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SignedTerm> terms;
    do {
        SignedTerm t;
        t.sign = permutation_sign(perm);
        t.product = Poly::constant(t.sign);
        for (std::size_t r = 0; r < n; ++r) {
            t.factors.emplace_back(r, perm[r]);
            t.product *= m(r, perm[r]);
        }
        terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return terms;
}

/// One of the 3! ways of pairing the even terms of a 3x3 expansion with the odd ones.
struct CandidateMatching {
    std::array<std::pair<std::size_t, std::size_t>, 3> pairs{};
    unsigned holding = 0;  // how many of the three cancellations hold exactly
    bool all_hold = false;
};

struct RatioChain {
    std::size_t col_from = 0;  // 1-based column labels
    std::size_t col_to = 0;
    RatFunc ratio;  // entry(col_to) / entry(col_from), identical in every row
    std::string text;
};

struct MatchingReport {
    std::vector<SignedTerm> terms;
    std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;
    Poly residual;  // sum of the unmatched terms, equal to the determinant
    bool perfect = false;
    std::vector<CandidateMatching> candidates;  // filled for 3x3 expansions only
    std::vector<RatioChain> chains;
};

/// Greedy pairing in index order of terms whose products are exact negatives.
/// Inside each class {v, -v} this matches min(#v, #-v) pairs, which is maximum.
/// Terms whose product vanishes play no part.
inline MatchingReport find_cancellation_matching(std::vector<SignedTerm> terms) {
    MatchingReport rep;
    const std::size_t n = terms.size();
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i] || terms[i].product.is_zero()) continue;
        const Poly neg = -terms[i].product;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!used[j] && terms[j].product == neg) {
                used[i] = used[j] = true;
                rep.matched_pairs.emplace_back(i, j);
                break;
            }
        }
    }
    rep.perfect = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i] || terms[i].product.is_zero()) continue;
        rep.perfect = false;
        rep.residual += terms[i].product;
    }

    if (n == 6) {
        std::vector<std::size_t> even, odd;
        for (std::size_t i = 0; i < n; ++i) (terms[i].sign > 0 ? even : odd).push_back(i);
        std::array<std::size_t, 3> pick{0, 1, 2};
        do {
            CandidateMatching cm;
            for (std::size_t k = 0; k < 3; ++k) {
                cm.pairs[k] = {even[k], odd[pick[k]]};
                if (terms[even[k]].product == -terms[odd[pick[k]]].product) ++cm.holding;
            }
            cm.all_hold = cm.holding == 3;
            rep.candidates.push_back(cm);
        } while (std::next_permutation(pick.begin(), pick.end()));
    }
    rep.terms = std::move(terms);
    return rep;
}

/// Matrix of M-th powers that remembers its bases, so M-th roots of matched
/// products are read off the bases instead of being computed.
struct PowerMatrix {
    PolyMatrix bases;
    unsigned exponent = 1;
    std::vector<std::size_t> col_labels;  // 1-based column names used in reports

    PowerMatrix(PolyMatrix b, unsigned m, std::vector<std::size_t> labels = {})
        : bases(std::move(b)), exponent(m), col_labels(std::move(labels)) {
        require(exponent >= 1, "power matrix exponent must be positive");
        if (col_labels.empty()) {
            col_labels.resize(bases.cols());
            std::iota(col_labels.begin(), col_labels.end(), 1);
        }
        require(col_labels.size() == bases.cols(), "one label per column");
    }

    PolyMatrix powered() const { return bases.map_entries(exponent); }
};

inline const char* row_name(std::size_t r) {
    static constexpr const char* names[] = {"t", "u", "v", "w", "z"};
    return r < 5 ? names[r] : "?";
}

inline std::string chain_text(std::size_t rows, std::size_t from, std::size_t to, const RatFunc& ratio) {
    std::string s;
    for (std::size_t r = 0; r < rows; ++r) {
        s += std::string(row_name(r)) + std::to_string(to) + "/" + row_name(r) + std::to_string(from);
        s += " = ";
    }
    return s + ratio.to_string();
}

/// Column pairs a quadruple construction rules out by design: (1,2) and (3,4).
inline std::vector<std::pair<std::size_t, std::size_t>> default_forbidden_pairs() { return {{1, 2}, {3, 4}}; }

/// Equal-ratio chains between columns implied by the perfect cancellation
/// matchings of a 3x3 power matrix. A matching is discarded when one of its
/// equations ties a forbidden column pair across two rows.
inline std::vector<RatioChain> ratio_chains(
    const PowerMatrix& pm, const MatchingReport& matching,
    const std::vector<std::pair<std::size_t, std::size_t>>& forbidden = default_forbidden_pairs()) {
    require(pm.bases.rows() == 3 && pm.bases.cols() == 3, "ratio chains are defined for 3x3 power matrices");
    if (!matching.perfect || matching.candidates.empty())
        throw Error(Errc::no_viable_chain, "no viable chain: cancellation matching is not perfect");

    const PolyMatrix pw = pm.powered();
    auto is_forbidden = [&](std::size_t a, std::size_t b) {
        const auto la = pm.col_labels[a], lb = pm.col_labels[b];
        return std::any_of(forbidden.begin(), forbidden.end(), [&](const auto& f) {
            return (f.first == la && f.second == lb) || (f.first == lb && f.second == la);
        });
    };

    std::vector<RatioChain> out;
    for (const auto& cm : matching.candidates) {
        if (!cm.all_hold) continue;
        // Each equation equates two products that share one factor; what is
        // left is a vanishing 2x2 minor on (row pair) x (column pair).
        std::vector<std::pair<std::size_t, std::size_t>> col_pairs;
        bool viable = true;
        for (const auto& [ei, oi] : cm.pairs) {
            const auto& fe = matching.terms[ei].factors;
            const auto& fo = matching.terms[oi].factors;
            std::vector<std::size_t> cols;
            for (std::size_t r = 0; r < 3; ++r)
                if (fe[r].second != fo[r].second) cols.push_back(fe[r].second);
            std::sort(cols.begin(), cols.end());
            if (is_forbidden(cols[0], cols[1])) viable = false;
            col_pairs.emplace_back(cols[0], cols[1]);
        }
        if (!viable) continue;
        for (const auto& cp : col_pairs) {
            if (std::count(col_pairs.begin(), col_pairs.end(), cp) < 2) continue;
            const RatFunc ratio(pw(0, cp.second), pw(0, cp.first));
            bool same = true;
            for (std::size_t r = 1; r < 3; ++r) same = same && RatFunc(pw(r, cp.second), pw(r, cp.first)) == ratio;
            if (!same) continue;
            const std::size_t from = pm.col_labels[cp.first], to = pm.col_labels[cp.second];
            const bool dup = std::any_of(out.begin(), out.end(), [&](const RatioChain& c) {
                return c.col_from == from && c.col_to == to;
            });
            if (!dup) out.push_back({from, to, ratio, chain_text(3, from, to, ratio)});
        }
    }
    if (out.empty()) throw Error(Errc::no_viable_chain, "no viable chain");
    std::sort(out.begin(), out.end(), [](const RatioChain& a, const RatioChain& b) {
        return std::pair(a.col_from, a.col_to) < std::pair(b.col_from, b.col_to);
    });
    return out;
}

/// Expansion, matching and (when a perfect matching exists) ratio chains in one pass.
inline MatchingReport analyze_power_matrix(const PowerMatrix& pm) {
    MatchingReport rep = find_cancellation_matching(expand_det_terms(pm.powered()));
    if (rep.perfect && pm.bases.rows() == 3) {
        try {
            rep.chains = ratio_chains(pm, rep);
        } catch (const Error& e) {
            if (e.code() != Errc::no_viable_chain) throw;
        }
    }
    return rep;
}

}  // namespace sumprod
