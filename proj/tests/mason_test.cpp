#include <gtest/gtest.h>

#include <algorithm>

#include "sumprod/mason.hpp"
#include "test_support.hpp"

namespace sumprod {
namespace {

using testing::Gen;
using testing::P;

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return Errc::parse;
}

TEST(Abc, Examples) {
    auto r1 = abc_check(P("1"), P("x"));
    EXPECT_EQ(r1.k, 2);
    EXPECT_EQ(std::max({r1.deg_a, r1.deg_b, r1.deg_c}), 1);
    EXPECT_TRUE(r1.holds);

    // (x^2-1)^2 + (2x)^2 = (x^2+1)^2: roots of ABC are 0, +-1, +-i.
    auto r2 = abc_check(pow(P("x^2-1"), 2), pow(P("2x"), 2));
    EXPECT_EQ(r2.deg_c, 4);
    EXPECT_EQ(r2.k, 5);
    EXPECT_TRUE(r2.holds);
    EXPECT_TRUE(r2.witness_divides);

    auto r3 = abc_check(P("x^3"), P("1"));
    EXPECT_EQ(r3.k, 4);
    EXPECT_TRUE(r3.holds);
    EXPECT_EQ(r3.witness, P("x^2"));
    EXPECT_EQ(r3.delta, P("-3x^2"));
    EXPECT_TRUE(r3.witness_divides);
}

TEST(Abc, ErrorsAreDistinct) {
    EXPECT_EQ(code_of([] { abc_check(P("x"), P("x^2")); }), Errc::not_coprime);
    EXPECT_EQ(code_of([] { abc_check(P("2"), P("3")); }), Errc::all_constant);
    EXPECT_EQ(code_of([] { abc_check(P("x"), P("-x")); }), Errc::precondition);
    EXPECT_EQ(code_of([] { abc_check(Poly{}, P("x")); }), Errc::precondition);
}

TEST(Abc, HoldsOnRandomCoprimePairs) {
    Gen g(41);
    int tested = 0;
    while (tested < 300) {
        const Poly a = g.nonzero_int_poly(8, 9), b = g.nonzero_int_poly(8, 9);
        const Poly c = a + b;
        if (c.is_zero() || c.is_constant() || gcd(a, b).degree() > 0) continue;
        const auto r = abc_check(a, b);
        EXPECT_TRUE(r.holds);
        EXPECT_TRUE(r.witness_divides);
        ++tested;
    }
}

TEST(Delta, AntisymmetricAndColumnAddition) {
    Gen g(42);
    for (int i = 0; i < 200; ++i) {
        const Poly a = g.rat_poly(5, 5), b = g.rat_poly(5, 5);
        EXPECT_EQ(delta(a, b), -delta(b, a));
        EXPECT_EQ(delta(a, a + b), delta(a, b));
    }
}

TEST(FermatCorollary, Examples) {
    auto v = fermat_degree_corollary(2, P("x^2-1"), P("2x"), P("x^2+1"));
    EXPECT_TRUE(v.consistent);
    EXPECT_EQ(v.verdict, "consistent, n = 2 attains the bound");
    auto w = fermat_degree_corollary(1, P("x"), P("1"), P("x+1"));
    EXPECT_TRUE(w.consistent);
    EXPECT_EQ(w.verdict, "consistent");
    EXPECT_EQ(code_of([] { fermat_degree_corollary(3, P("x^2-1"), P("2x"), P("x^2+1")); }), Errc::not_a_solution);
    EXPECT_EQ(code_of([] { fermat_degree_corollary(1, P("x^2"), P("x"), P("x^2+x")); }), Errc::not_coprime);
}

TEST(Family, CountsAndOrder) {
    // Degree <= 1, height 1, positive leading: {1} + {x-1, x, x+1}.
    const auto fam = integer_poly_family(1, 1, false);
    EXPECT_EQ(fam, (std::vector<Poly>{P("1"), P("x-1"), P("x"), P("x+1")}));
    // Degree <= 2, height 3: 3 + 3*7 + 3*49.
    EXPECT_EQ(integer_poly_family(2, 3, false).size(), 171u);
    EXPECT_EQ(integer_poly_family(2, 3, true).size(), 57u);
}

TEST(FermatPolySearch, PythagoreanOrbitAtSquares) {
    PolySearchParams p;
    p.k = 3;
    p.m = 2;
    p.deg_max = 2;
    p.height = 2;
    const auto rep = fermat_poly_search(p);
    const SearchSolution<Poly> want{{1, 1, -1}, {P("2x"), P("x^2-1"), P("x^2+1")}, false};
    EXPECT_NE(std::find(rep.solutions.begin(), rep.solutions.end(), want), rep.solutions.end());
    for (const auto& s : rep.solutions) {
        Poly acc;
        for (std::size_t i = 0; i < s.bases.size(); ++i) acc += pow(s.bases[i], 2) * Rat(s.signs[i]);
        EXPECT_TRUE(acc.is_zero());
    }
}

TEST(FermatPolySearch, TwoTermsAreAlwaysTrivial) {
    for (unsigned m = 1; m <= 4; ++m) {
        PolySearchParams p;
        p.k = 2;
        p.m = m;
        p.deg_max = 2;
        p.height = 2;
        const auto rep = fermat_poly_search(p);
        EXPECT_EQ(rep.nontrivial_count(), 0u);
        EXPECT_FALSE(rep.solutions.empty());
    }
}

TEST(FermatPolySearch, NoNontrivialCubesSmall) {
    PolySearchParams p;
    p.k = 3;
    p.m = 3;
    p.deg_max = 1;
    p.height = 2;
    EXPECT_EQ(fermat_poly_search(p).nontrivial_count(), 0u);
}

TEST(FermatPolySearch, MatchesNaiveTripleLoop) {
    PolySearchParams p;
    p.k = 3;
    p.m = 2;
    p.deg_max = 1;
    p.height = 2;
    p.signs = "++-";
    const auto rep = fermat_poly_search(p);
    const auto fam = integer_poly_family(1, 2, false);
    std::set<SearchSolution<Poly>> naive;
    for (const auto& a : fam)
        for (const auto& b : fam)
            for (const auto& c : fam)
                if (a * a + b * b == c * c) naive.insert(detail::canonical_poly_solution({{1, a}, {1, b}, {-1, c}}));
    EXPECT_EQ(std::set<SearchSolution<Poly>>(rep.solutions.begin(), rep.solutions.end()), naive);
}

TEST(FermatPolySearch, CapRefusal) {
    PolySearchParams p;
    p.k = 4;
    p.m = 3;
    p.deg_max = 2;
    p.height = 3;
    p.max_space = 1000;
    try {
        fermat_poly_search(p);
        FAIL();
    } catch (const ResourceCapError& e) {
        EXPECT_EQ(e.cap(), 1000u);
        EXPECT_GT(e.requested(), 1000u);
    }
}

TEST(Lemma2, Examples) {
    auto r = lemma2_bound({4, 4}, 4, 0, 5, Rat(1));
    EXPECT_EQ(r.D, Rat(4));
    EXPECT_EQ(r.rhs, make_rat(17, 4));
    EXPECT_TRUE(r.satisfiable);

    auto s = lemma2_bound({4, 4}, 4, 0, 50, Rat(1));
    // M - k + 2 = 49: 7/49 + 200/98 = 107/49.
    EXPECT_EQ(s.rhs, make_rat(107, 49));
    EXPECT_FALSE(s.satisfiable);

    // Large M: rhs tends to eps D / 2, below deg G = D.
    auto t = lemma2_bound({3, 3}, 3, 0, 1'000'000, Rat(1));
    EXPECT_FALSE(t.satisfiable);
    EXPECT_LT(t.rhs, Rat(2));

    EXPECT_THROW(lemma2_bound({4, 4}, 4, 0, 1, Rat(1)), Error);
}

TEST(Lemma2, MinimalExponent) {
    // rhs(M) = (7 + 2M)/(M - 1) drops below 4 once M > 5.5.
    EXPECT_EQ(lemma2_min_M({4, 4}, 4, 0, Rat(1)), 6u);
    EXPECT_EQ(lemma2_min_M({3}, 3, 0, Rat(1)), 1u);
    // Doubling every degree keeps the verdicts at M = 5 and M = 50.
    EXPECT_TRUE(lemma2_bound({8, 8}, 8, 0, 5, Rat(1)).satisfiable);
    EXPECT_FALSE(lemma2_bound({8, 8}, 8, 0, 50, Rat(1)).satisfiable);
}

TEST(Lemma2, MinimalExponentIsStableAboveIt) {
    for (unsigned d = 1; d <= 5; ++d) {
        const auto m = lemma2_min_M({d, d}, d, 0, Rat(1));
        ASSERT_TRUE(m);
        for (unsigned M = *m; M < *m + 200; ++M) EXPECT_FALSE(lemma2_bound({d, d}, d, 0, M, Rat(1)).satisfiable);
    }
}

TEST(Lemma2, MonotoneInEpsAndKOnBoundaryGrid) {
    // deg G sits exactly on eps D, with every f of degree D.
    for (unsigned D = 2; D <= 6; ++D) {
        std::optional<unsigned> prev_k;
        for (unsigned k = 2; k <= 5; ++k) {
            std::optional<unsigned> prev_eps;
            for (unsigned num : {1u, 2u}) {
                const Rat eps = make_rat(Int(num), Int(2));
                const unsigned dg = static_cast<unsigned>(Rat(eps * D).get_num().get_ui() / Rat(eps * D).get_den().get_ui());
                if (Rat(dg) != eps * D) continue;
                const auto m = lemma2_min_M(std::vector<unsigned>(k - 1, D), dg, 0, eps);
                ASSERT_TRUE(m);
                if (prev_eps) {
                    EXPECT_LE(*m, *prev_eps);
                }
                prev_eps = m;
                if (num == 2) {
                    if (prev_k) {
                        EXPECT_GE(*m, *prev_k);
                    }
                    prev_k = m;
                }
            }
        }
    }
}

TEST(CommonFactor, Examples) {
    SignedPowerEquation eq{{{1, P("x^2")}, {1, P("x^3")}, {-1, P("x^2+x")}}, 2};
    auto [g, out] = remove_common_factor(eq);
    EXPECT_EQ(g, P("x"));
    EXPECT_EQ(out.terms[0].base, P("x"));
    EXPECT_EQ(out.terms[1].base, P("x^2"));
    EXPECT_EQ(out.terms[2].base, P("x+1"));

    SignedPowerEquation cop{{{1, P("x")}, {1, P("x+1")}}, 3};
    auto [g2, out2] = remove_common_factor(cop);
    EXPECT_EQ(g2, P("1"));
    EXPECT_EQ(out2, cop);

    SignedPowerEquation same{{{1, P("x^2+1")}, {-1, P("x^2+1")}}, 2};
    auto [g3, out3] = remove_common_factor(same);
    EXPECT_EQ(g3, P("x^2+1"));
    for (const auto& t : out3.terms) EXPECT_EQ(t.base, P("1"));
}

TEST(SignedPowerEquation, NormalizationTracksMultiplicity) {
    SignedPowerEquation eq{{{1, P("x")}, {1, P("x")}, {-1, P("x+1")}, {1, P("x+1")}, {-1, P("2")}}, 3};
    const auto n = eq.normalized();
    ASSERT_EQ(n.terms.size(), 2u);
    EXPECT_EQ(n.terms[0].base, P("2"));
    EXPECT_EQ(n.terms[1].base, P("x"));
    EXPECT_EQ(n.terms[1].mult, 2u);
    EXPECT_EQ(n.value(), eq.value());
}

TEST(Reduction, MergesPairSharingX) {
    // (x^2+x) - (x^2-x) - 2x = 0.
    SignedPowerEquation eq{{{1, P("x^2+x")}, {-1, P("x^2-x")}, {-1, P("2x")}}, 1};
    auto st = ReductionState::from(eq);
    auto step = gcd_reduction_step(st, Rat(0));
    ASSERT_TRUE(step);
    EXPECT_FALSE(step->with_composite);
    EXPECT_EQ(step->first, 0u);
    EXPECT_EQ(step->second, 1u);
    EXPECT_EQ(step->G, P("x"));
    EXPECT_EQ(step->g, P("2"));
    EXPECT_TRUE(st.value().is_zero());
}

TEST(Reduction, CoprimeBasesGiveNoStep) {
    SignedPowerEquation eq{{{1, P("x")}, {1, P("1")}, {-1, P("x+1")}}, 1};
    auto st = ReductionState::from(eq);
    EXPECT_FALSE(gcd_reduction_step(st, Rat(0)));
}

TEST(Reduction, OppositePairIsDependent) {
    SignedPowerEquation eq{{{1, P("x+3")}, {1, P("-x-3")}}, 3};
    auto st = ReductionState::from(eq);
    EXPECT_EQ(code_of([&] { gcd_reduction_step(st, Rat(0)); }), Errc::dependent_subfamily);
    SignedPowerEquation bad{{{1, P("x")}, {1, P("x")}}, 3};
    auto st2 = ReductionState::from(bad);
    EXPECT_EQ(code_of([&] { gcd_reduction_step(st2, Rat(0)); }), Errc::precondition);
}

TEST(Reduction, PreservesValueOnRandomZeroSums) {
    Gen g(43);
    for (int i = 0; i < 60; ++i) {
        const unsigned M = static_cast<unsigned>(g.between(1, 3));
        const Poly common = g.monic_poly(1, 2, 3);
        SignedPowerEquation eq;
        eq.exponent = M;
        Poly acc;
        for (int t = 0; t < 3; ++t) {
            Poly f = common * g.nonzero_int_poly(2, 3);
            const int s = g.between(0, 1) ? 1 : -1;
            eq.terms.push_back({s, f});
            acc += pow(f, M) * Rat(s);
        }
        if (acc.is_zero()) continue;
        // Close the equation with a last term that carries the negated remainder as G^M g.
        ReductionState st = ReductionState::from(eq);
        st.composites.push_back({P("1"), -acc});
        ASSERT_TRUE(st.value().is_zero());
        for (int step = 0; step < 4; ++step) {
            try {
                if (!gcd_reduction_step(st, Rat(0))) break;
            } catch (const Error& e) {
                EXPECT_EQ(e.code(), Errc::dependent_subfamily);
                break;
            }
            EXPECT_TRUE(st.value().is_zero());
        }
    }
}

TEST(Reduction, TraceFollowsSchedule) {
    SignedPowerEquation eq{{{1, P("x^3+x^2")}, {-1, P("x^3-x^2")}, {-1, P("2x^2")}}, 1};
    const auto tr = gcd_reduction(eq, Rat(1));
    EXPECT_TRUE(tr.had_common_factor);
    EXPECT_EQ(tr.common_factor, P("x^2"));
    ASSERT_FALSE(tr.eps_schedule.empty());
    EXPECT_EQ(tr.eps_schedule[0], make_rat(1, 6));
    if (tr.eps_schedule.size() > 1) {
        EXPECT_EQ(tr.eps_schedule[1], make_rat(1, 24));
    }
    EXPECT_TRUE(tr.terminal.value().is_zero());
}

}  // namespace
}  // namespace sumprod
