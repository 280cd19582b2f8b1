#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "sumprod/wronskian.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

using testing::Gen;
using testing::P;

PolyMatrix random_matrix(Gen& g, std::size_t n, int deg, long h) {
    PolyMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = g.int_poly(deg, h);
    return m;
}

// Leibniz formula evaluated at a rational point: an oracle independent of
// both determinant algorithms.
Rat leibniz_at(const PolyMatrix& m, const Rat& x) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rat acc;
    do {
        Rat t = permutation_sign(perm);
        for (std::size_t r = 0; r < n; ++r) t *= m(r, perm[r]).eval(x);
        acc += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// 3x3 of squared bases whose third column is r times the first.
PowerMatrix planted_chain(Gen& g, std::size_t col_a, std::size_t col_b, const Poly& r, unsigned m) {
    PolyMatrix b(3, 3);
    for (std::size_t row = 0; row < 3; ++row)
        for (std::size_t c = 0; c < 3; ++c) b(row, c) = g.monic_poly(1, 2, 3);
    for (std::size_t row = 0; row < 3; ++row) b(row, col_b) = r * b(row, col_a);
    return PowerMatrix(b, m);
}

TEST(Wronskian, MatrixExamples) {
    const std::vector<Poly> a{P("1"), P("x")};
    EXPECT_EQ(wronskian_matrix(a), PolyMatrix({{P("1"), P("x")}, {Poly{}, P("1")}}));
    const std::vector<Poly> b{P("x"), P("2x")};
    EXPECT_EQ(wronskian_matrix(b), PolyMatrix({{P("x"), P("2x")}, {P("1"), P("2")}}));
    const std::vector<Poly> c{P("1"), P("x"), P("x^2")};
    const auto w = wronskian_matrix(c);
    EXPECT_EQ(w(2, 0), Poly{});
    EXPECT_EQ(w(2, 1), Poly{});
    EXPECT_EQ(w(2, 2), P("2"));
    const std::vector<Poly> bad{P("x"), Poly{}};
    EXPECT_THROW(wronskian_matrix(bad), Error);
}

TEST(Det, Examples) {
    EXPECT_EQ(det(PolyMatrix({{P("1"), P("x")}, {Poly{}, P("1")}})), P("1"));
    EXPECT_EQ(det(PolyMatrix({{P("x"), P("2x")}, {P("1"), P("2")}})), Poly{});
    EXPECT_THROW(det(PolyMatrix(2, 3)), Error);
    // Wronskian of 1, x, x^2 is upper triangular with diagonal 1, 1, 2.
    const std::vector<Poly> c{P("1"), P("x"), P("x^2")};
    EXPECT_EQ(det(wronskian_matrix(c)), P("2"));
}

TEST(Det, AlgorithmsAgreeWithLeibniz) {
    Gen g(31);
    for (int i = 0; i < 120; ++i) {
        const std::size_t n = static_cast<std::size_t>(g.between(1, 5));
        PolyMatrix m = random_matrix(g, n, 2, 3);
        if (g.between(0, 3) == 0 && n >= 2) m.swap_rows(0, 1), m(0, 0) = Poly{};
        const Poly a = det_cofactor(m), b = det_bareiss(m);
        EXPECT_EQ(a, b);
        EXPECT_EQ(det(m), a);
        for (long x = -2; x <= 2; ++x) EXPECT_EQ(a.eval(Rat(x)), leibniz_at(m, Rat(x)));
    }
}

TEST(Det, SwapFlipsSignAndColumnAdditionPreserves) {
    Gen g(32);
    for (int i = 0; i < 80; ++i) {
        const std::size_t n = static_cast<std::size_t>(g.between(2, 5));
        const PolyMatrix m = random_matrix(g, n, 2, 3);
        const Poly d = det(m);
        PolyMatrix s = m;
        s.swap_rows(0, n - 1);
        EXPECT_EQ(det(s), -d);
        s = m;
        s.swap_cols(0, 1);
        EXPECT_EQ(det(s), -d);
        s = m;
        for (std::size_t r = 0; r < n; ++r) s(r, 1) += s(r, 0);
        EXPECT_EQ(det(s), d);
    }
}

TEST(Certificate, Examples) {
    const std::vector<Poly> a{P("x"), P("2x")};
    EXPECT_EQ(dependence_certificate(a), (std::vector<Rat>{1, make_rat(-1, 2)}));
    const std::vector<Poly> b{P("1"), P("x")};
    EXPECT_FALSE(dependence_certificate(b).has_value());
    const std::vector<Poly> c{P("x+1"), P("x-1"), P("x")};
    EXPECT_EQ(dependence_certificate(c), (std::vector<Rat>{1, 1, -2}));
    const std::vector<Poly> bad{Poly{}};
    EXPECT_THROW(dependence_certificate(bad), Error);
}

TEST(Certificate, AgreesWithWronskianOnRandomFamilies) {
    Gen g(33);
    int mismatches = 0, dependent = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t l = static_cast<std::size_t>(g.between(1, 4));
        std::vector<Poly> fs;
        for (std::size_t j = 0; j < l; ++j) fs.push_back(g.nonzero_int_poly(static_cast<int>(g.between(0, 4)), 3));
        if (l >= 2 && g.between(0, 1) == 0) {
            Poly comb;
            for (std::size_t j = 0; j + 1 < l; ++j) comb += fs[j] * Rat(g.between(-2, 2));
            if (!comb.is_zero()) fs.back() = comb;
        }
        const bool singular = det(wronskian_matrix(fs)).is_zero();
        const auto cert = dependence_certificate(fs);
        if (singular != cert.has_value()) ++mismatches;
        if (cert) {
            ++dependent;
            EXPECT_TRUE(verify_certificate(fs, *cert));
            const auto first = std::find_if(cert->begin(), cert->end(), [](const Rat& a) { return a != 0; });
            EXPECT_EQ(*first, Rat(1));
        }
    }
    EXPECT_EQ(mismatches, 0);
    EXPECT_GT(dependent, 100);
}

TEST(Certificate, RowDependenceOnDuplicatedRows) {
    PolyMatrix m({{P("x"), P("1")}, {P("x^2"), P("x+1")}, {P("x"), P("1")}});
    const auto cert = row_dependence(m);
    ASSERT_TRUE(cert);
    EXPECT_EQ(*cert, (std::vector<Rat>{1, 0, -1}));
    EXPECT_FALSE(row_dependence(PolyMatrix({{P("x"), P("1")}, {P("1"), P("x")}})).has_value());
}

TEST(Expansion, Examples) {
    const auto t2 = expand_det_terms(PolyMatrix({{P("1"), P("x")}, {P("x+1"), P("2")}}));
    ASSERT_EQ(t2.size(), 2u);
    EXPECT_EQ(t2[0].sign, 1);
    EXPECT_EQ(t2[0].product, P("2"));
    EXPECT_EQ(t2[1].sign, -1);
    EXPECT_EQ(t2[1].product, P("-x^2-x"));
    EXPECT_EQ(t2[1].factors, (std::vector<Position>{{0, 1}, {1, 0}}));
    EXPECT_THROW(expand_det_terms(PolyMatrix(6, 6)), Error);
}

TEST(Expansion, SumsToDeterminant) {
    Gen g(34);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = static_cast<std::size_t>(g.between(1, 5));
        const PolyMatrix m = random_matrix(g, n, 2, 3);
        const auto terms = expand_det_terms(m);
        std::size_t fact = 1;
        for (std::size_t k = 2; k <= n; ++k) fact *= k;
        ASSERT_EQ(terms.size(), fact);
        Poly sum;
        for (const auto& t : terms) {
            std::set<std::size_t> rows, cols;
            for (const auto& [r, c] : t.factors) rows.insert(r), cols.insert(c);
            EXPECT_EQ(rows.size(), n);
            EXPECT_EQ(cols.size(), n);
            sum += t.product;
        }
        EXPECT_EQ(sum, det(m));
    }
}

TEST(Matching, IdentityHasNoPairs) {
    PolyMatrix id({{P("1"), Poly{}, Poly{}}, {Poly{}, P("1"), Poly{}}, {Poly{}, Poly{}, P("1")}});
    const auto rep = find_cancellation_matching(expand_det_terms(id));
    EXPECT_TRUE(rep.matched_pairs.empty());
    EXPECT_FALSE(rep.perfect);
    EXPECT_EQ(rep.residual, P("1"));
    EXPECT_EQ(rep.candidates.size(), 6u);
    EXPECT_THROW(ratio_chains(PowerMatrix(id, 1), rep), Error);
    try {
        ratio_chains(PowerMatrix(id, 1), rep);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::no_viable_chain);
    }
}

TEST(Matching, PlantedChainOnColumnsOneThree) {
    Gen g(35);
    const Poly r = P("x+2");
    const PowerMatrix pm = planted_chain(g, 0, 2, r, 2);
    EXPECT_EQ(det(pm.powered()), Poly{});
    const auto rep = find_cancellation_matching(expand_det_terms(pm.powered()));
    EXPECT_TRUE(rep.perfect);
    EXPECT_EQ(rep.matched_pairs.size(), 3u);
    EXPECT_TRUE(rep.residual.is_zero());
    EXPECT_TRUE(std::any_of(rep.candidates.begin(), rep.candidates.end(), [](const auto& c) { return c.all_hold; }));
    for (const auto& [i, j] : rep.matched_pairs) EXPECT_EQ(rep.terms[i].product, -rep.terms[j].product);

    const auto chains = ratio_chains(pm, rep);
    ASSERT_EQ(chains.size(), 1u);
    EXPECT_EQ(chains[0].col_from, 1u);
    EXPECT_EQ(chains[0].col_to, 3u);
    EXPECT_EQ(chains[0].ratio, RatFunc(r * r));
    EXPECT_EQ(chains[0].text, "t3/t1 = u3/u1 = v3/v1 = x^2 + 4*x + 4");
}

TEST(Matching, PlantedChainOnColumnsTwoThree) {
    Gen g(36);
    const PowerMatrix pm = planted_chain(g, 1, 2, P("x-1"), 2);
    const auto rep = analyze_power_matrix(pm);
    ASSERT_TRUE(rep.perfect);
    ASSERT_EQ(rep.chains.size(), 1u);
    EXPECT_EQ(rep.chains[0].col_from, 2u);
    EXPECT_EQ(rep.chains[0].col_to, 3u);
}

TEST(Matching, ForbiddenPairLeavesNoViableChain) {
    Gen g(37);
    // Columns 1 and 2 proportional: every perfect matching ties (1,2).
    const PowerMatrix pm = planted_chain(g, 0, 1, P("x"), 2);
    const auto rep = find_cancellation_matching(expand_det_terms(pm.powered()));
    ASSERT_TRUE(rep.perfect);
    EXPECT_THROW(ratio_chains(pm, rep), Error);
    EXPECT_NO_THROW(ratio_chains(pm, rep, {}));
}

TEST(Matching, RandomNonsingularIsImperfect) {
    Gen g(38);
    for (int i = 0; i < 40; ++i) {
        const PolyMatrix m = random_matrix(g, 3, 2, 4);
        const Poly d = det(m);
        if (d.is_zero()) continue;
        const auto rep = find_cancellation_matching(expand_det_terms(m));
        EXPECT_FALSE(rep.perfect);
        EXPECT_EQ(rep.residual, d);
    }
}

TEST(Matching, FourByFourProportionalColumnsGiveTwelvePairs) {
    Gen g(39);
    PolyMatrix b(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) b(r, c) = g.monic_poly(1, 2, 3);
    for (std::size_t r = 0; r < 4; ++r) b(r, 1) = P("2x+1") * b(r, 0);
    const auto rep = find_cancellation_matching(expand_det_terms(b.map_entries(3)));
    EXPECT_EQ(rep.terms.size(), 24u);
    EXPECT_EQ(rep.matched_pairs.size(), 12u);
    EXPECT_TRUE(rep.perfect);
}

// Perfect matching implies a zero determinant. Among M-th powers of monic
// entries with M at least this value, the random singular instances built
// here also come with a perfect matching.
constexpr unsigned kConverseMinExponent = 3;

TEST(Matching, PerfectImpliesSingularAndConverseOnPowers) {
    Gen g(40);
    for (int i = 0; i < 60; ++i) {
        const unsigned m = static_cast<unsigned>(g.between(kConverseMinExponent, 5));
        PolyMatrix b(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) b(r, c) = g.monic_poly(0, 2, 2);
        if (i % 2 == 0) {
            const std::size_t ca = static_cast<std::size_t>(g.between(0, 2));
            const std::size_t cb = (ca + 1 + static_cast<std::size_t>(g.between(0, 1))) % 3;
            const Poly r = g.monic_poly(0, 1, 2);
            for (std::size_t row = 0; row < 3; ++row) b(row, cb) = r * b(row, ca);
        }
        const PolyMatrix pw = b.map_entries(m);
        const auto rep = find_cancellation_matching(expand_det_terms(pw));
        const bool singular = det(pw).is_zero();
        if (rep.perfect) {
            EXPECT_TRUE(singular);
        }
        if (singular) {
            EXPECT_TRUE(rep.perfect);
        }
    }
}

}  // namespace
}  // namespace sumprod
