#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "tilt/quiverrep.hpp"

using namespace tilt;

TEST(Quiver, ParsesOrientationsAndRoundTrips) {
    auto q = parse_quiver("1>2<3<4");
    EXPECT_EQ(q.vertex_count(), 4);
    EXPECT_EQ(q.spec(), "1>2<3<4");
    ASSERT_EQ(q.arrows().size(), 3u);
    EXPECT_EQ(q.arrows()[0].source, 0);
    EXPECT_EQ(q.arrows()[0].target, 1);
    EXPECT_EQ(q.arrows()[1].source, 2);
    EXPECT_EQ(q.arrows()[1].target, 1);
    EXPECT_EQ(parse_quiver("1").vertex_count(), 1);
}

TEST(Quiver, ParseErrorsNameTheToken) {
    try {
        parse_quiver("1>3");
        FAIL() << "accepted a skipped vertex";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
    }
    EXPECT_THROW(parse_quiver(""), ParseError);
    EXPECT_THROW(parse_quiver("1-2"), ParseError);
    EXPECT_THROW(parse_quiver("1>2", 6), std::invalid_argument);
}

TEST(Quiver, OrientationCount) {
    EXPECT_EQ(all_orientations(1).size(), 1u);
    EXPECT_EQ(all_orientations(4).size(), 8u);
}

TEST(Indecomposables, IntervalCountAndNames) {
    auto q = parse_quiver("1>2<3");
    auto ind = all_indecomposables(q);
    EXPECT_EQ(ind.size(), 6u);
    EXPECT_EQ(name(ind.front()), "M[1,1]");
    for (const auto& m : ind) EXPECT_NO_THROW(check_rep(q, realize(q, m)));
}

TEST(Indecomposables, SocleLayerAliases) {
    auto q = parse_quiver("1>2");
    EXPECT_EQ(socle_alias(q, {1, 2}), "1/2");
    EXPECT_EQ(socle_alias(q, {2, 2}), "2");
    auto q4 = parse_quiver("1>2<3<4");
    EXPECT_EQ(socle_alias(q4, {1, 4}), "4/1 3/2");
}

TEST(Hom, MatchesScalarCounting) {
    for (int n = 1; n <= 4; ++n)
        for (Elem p : {2u, 3u})
            for (const auto& q : all_orientations(n, p)) {
                auto ind = all_indecomposables(q);
                for (const auto& a : ind)
                    for (const auto& b : ind)
                        EXPECT_EQ(hom_dim(q, realize(q, a), realize(q, b)), oracle::hom_dim_by_counting(q, a, b))
                            << q.spec() << " " << name(a) << " " << name(b);
            }
}

TEST(Hom, BasisElementsAreIntertwiners) {
    auto q = parse_quiver("1<2>3");
    auto x = realize_sum(q, {{1, 3}, {2, 2}});
    auto y = realize_sum(q, {{1, 2}, {2, 3}});
    for (const auto& f : hom_basis(q, x, y)) EXPECT_TRUE(is_intertwiner(q, x, y, f));
}

TEST(Ext, EulerIdentityOnAllIndecomposablePairs) {
    for (int n = 1; n <= 5; ++n)
        for (const auto& q : all_orientations(n)) {
            auto ind = all_indecomposables(q);
            for (const auto& a : ind)
                for (const auto& b : ind) {
                    Rep x = realize(q, a), y = realize(q, b);
                    long long lhs = static_cast<long long>(hom_dim(q, x, y)) -
                                    static_cast<long long>(extension_space(q, x, y).dim());
                    EXPECT_EQ(lhs, euler_form(q, x.dims, y.dims)) << q.spec() << " " << name(a) << " " << name(b);
                }
        }
}

TEST(Ext, NonsplitMiddleTermOfSimples) {
    // 0 -> S2 -> P1 -> S1 -> 0 on 1>2
    auto q = parse_quiver("1>2");
    Rep s1 = realize(q, {1, 1}), s2 = realize(q, {2, 2});
    auto ext = extension_space(q, s1, s2);
    ASSERT_EQ(ext.dim(), 1u);
    auto e = middle_term(q, s1, s2, ext.basis[0]);
    EXPECT_EQ(decompose(q, e), (std::vector<IndecId>{{1, 2}}));
    EXPECT_EQ(extension_space(q, s2, s1).dim(), 0u);
}

TEST(Decompose, RecoversDirectSums) {
    auto q = parse_quiver("1>2<3<4");
    std::vector<IndecId> parts{{1, 2}, {2, 4}, {3, 3}, {3, 3}, {1, 4}};
    auto got = decompose(q, realize_sum(q, parts));
    std::sort(parts.begin(), parts.end());
    EXPECT_EQ(got, parts);
}

TEST(Subreps, TraceAndQuotient) {
    auto q = parse_quiver("1>2");
    Rep p1 = realize(q, {1, 2});
    auto tq = trace_quotient(q, {{2, 2}}, p1);
    EXPECT_EQ(decompose(q, as_rep(q, tq.trace)), (std::vector<IndecId>{{2, 2}}));
    EXPECT_EQ(decompose(q, tq.quotient), (std::vector<IndecId>{{1, 1}}));
    // S1 maps to nothing in P1 = M[1,2]
    EXPECT_TRUE(decompose(q, as_rep(q, trace(q, {{1, 1}}, p1))).empty());
}

TEST(Subreps, KernelAndImageOfAMap) {
    auto q = parse_quiver("1>2");
    Rep p1 = realize(q, {1, 2}), s1 = realize(q, {1, 1});
    auto basis = hom_basis(q, p1, s1);
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(decompose(q, as_rep(q, kernel(q, p1, basis[0]))), (std::vector<IndecId>{{2, 2}}));
    EXPECT_EQ(decompose(q, as_rep(q, image(q, s1, basis[0]))), (std::vector<IndecId>{{1, 1}}));
}

TEST(Subreps, SubspaceCountsAreGaussianBinomials) {
    // number of subspaces of F_2^3: 1 + 7 + 7 + 1
    EXPECT_EQ(all_subspaces(3, 2).size(), 16u);
    EXPECT_EQ(all_subspaces(2, 3).size(), 6u);
    EXPECT_EQ(all_subspaces(0, 2).size(), 1u);
}

TEST(Subreps, EnumerationIsClosedAndComplete) {
    auto q = parse_quiver("1>2");
    auto x = realize(q, {1, 2});
    auto subs = all_subreps(q, x);
    EXPECT_EQ(subs.size(), 3u);  // 0, S2, P1
    for (const auto& s : subs) EXPECT_TRUE(is_closed(q, s));
}

TEST(Serre, SimpleInjectiveIsSerreOnA2) {
    auto q = parse_quiver("1>2");
    EXPECT_TRUE(serre_check(q, {{1, 1}}));
    EXPECT_TRUE(serre_check(q, {{2, 2}}));
    EXPECT_FALSE(serre_check(q, {{1, 2}}));
    EXPECT_FALSE(serre_check(q, {{1, 1}, {2, 2}}));
}

TEST(Projectives, TopElementsGenerate) {
    auto q = parse_quiver("1<2>3");
    auto x = realize_sum(q, {{1, 3}, {2, 2}});
    auto tops = top_elements(q, x);
    EXPECT_EQ(tops.size(), 2u);
    EXPECT_EQ(projective_indec(q, 1), (IndecId{1, 3}));
    EXPECT_EQ(projective_indec(q, 0), (IndecId{1, 1}));
}
