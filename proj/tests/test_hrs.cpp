#include <gtest/gtest.h>

#include <memory>

#include "tilt/hrs.hpp"

using namespace tilt;

namespace {

DAtom at(int lo, int hi, int shift = 0) { return {{lo, hi}, shift}; }

WindowContext window_for(const std::string& spec, int m, Elem p = 2) {
    return WindowContext(std::make_shared<DerivedCategory>(parse_quiver(spec, p)), Window{-2 * m - 2, 2 * m + 2});
}

}  // namespace

TEST(ExtendedHeart, WidthOneIsTheModuleCategory) {
    auto ctx = window_for("1>2<3", 1);
    auto t = standard_tstructure(ctx);
    auto h = extended_heart(ctx, t, 1);
    ASSERT_EQ(h.atoms.size(), 6u);
    for (const auto& a : h.atoms) EXPECT_EQ(a.shift, 0);
}

TEST(ExtendedHeart, WidthTwoIsHeartAndItsShift) {
    auto ctx = window_for("1>2", 2);
    std::vector<Check> checks;
    auto h = extended_heart(ctx, standard_tstructure(ctx), 2, &checks);
    EXPECT_EQ(h.atoms, (std::vector<DAtom>{at(1, 1, 0), at(1, 2, 0), at(2, 2, 0), at(1, 1, 1), at(1, 2, 1), at(2, 2, 1)}));
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_TRUE(checks[0].pass);
}

TEST(ExtendedHeart, NarrowWindowIsRejected) {
    WindowContext ctx(std::make_shared<DerivedCategory>(parse_quiver("1>2")), Window{-1, 1});
    auto t = standard_tstructure(ctx);
    EXPECT_THROW(extended_heart(ctx, t, 2), DomainError);
    EXPECT_THROW(extended_heart(ctx, t, 0), ContractError);
}

TEST(ExtendedHeart, StructuralIdentitiesHold) {
    for (const char* spec : {"1>2", "1>2<3", "1<2<3"})
        for (int m : {1, 2}) {
            auto ctx = window_for(spec, m);
            auto h = extended_heart(ctx, standard_tstructure(ctx), m);
            for (const auto& c : extended_heart_identities(ctx.category(), h))
                EXPECT_TRUE(c.pass) << spec << " m=" << m << " " << c.name << " " << c.witness;
        }
}

TEST(Tilting, SimpleTiltOnA2) {
    // tilting mod k(1>2) at (add S2, add S1) leaves S2 and lifts S1 by one
    auto ctx = window_for("1>2", 1);
    auto h = extended_heart(ctx, standard_tstructure(ctx), 1);
    auto hc = heart_context(ctx, h);
    auto tf = is_torsion_pair(hc, hc.make({at(2, 2)}), hc.make({at(1, 1)}));
    ASSERT_TRUE(tf.is_s_torsion);
    std::vector<Check> checks;
    auto tilted = hrs_tilt(ctx, h, tf, &checks);
    EXPECT_EQ(tilted.atoms, (std::vector<DAtom>{at(2, 2, 0), at(1, 1, 1)}));
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_TRUE(checks[0].pass);
    EXPECT_TRUE(rel_leq_hearts(ctx.category(), tilted, h));
    EXPECT_FALSE(rel_leq_hearts(ctx.category(), h, tilted));
    EXPECT_EQ(hrs_untilt(ctx, h, tilted), tf);
}

TEST(Tilting, PayloadMustBeSTorsion) {
    auto ctx = window_for("1>2", 1);
    auto h = extended_heart(ctx, standard_tstructure(ctx), 1);
    auto hc = heart_context(ctx, h);
    TorsionPairRecord bogus{hc.make({at(1, 1)}), hc.make({at(2, 2)})};
    EXPECT_THROW(hrs_tilt(ctx, h, bogus), DomainError);
}

TEST(Enumeration, CountsAgreeAcrossTheThreeSides) {
    // sizes of tstr[U[m], U], frozen from the brute-force aisle enumeration
    struct Case {
        const char* spec;
        int m;
        std::size_t count;
    };
    for (const auto& c : {Case{"1>2", 1, 5}, Case{"1>2", 2, 12}, Case{"1<2<3", 1, 14}, Case{"1>2<3", 2, 55}}) {
        auto ctx = window_for(c.spec, c.m);
        auto res = hrs_enumerate(ctx, standard_tstructure(ctx), c.m);
        EXPECT_EQ(res.stors.size(), c.count) << c.spec;
        EXPECT_EQ(res.hearts.size(), c.count) << c.spec;
        EXPECT_EQ(res.tstructures.size(), c.count) << c.spec;
        for (const auto& ch : res.checks) EXPECT_TRUE(ch.pass) << c.spec << " " << ch.name << " " << ch.witness;
    }
}

TEST(Enumeration, CountsDoNotDependOnThePrime) {
    auto c2 = window_for("1>2", 2, 2), c3 = window_for("1>2", 2, 3);
    auto r2 = hrs_enumerate(c2, standard_tstructure(c2), 2);
    auto r3 = hrs_enumerate(c3, standard_tstructure(c3), 2);
    ASSERT_EQ(r2.hearts.size(), r3.hearts.size());
    for (std::size_t i = 0; i < r2.hearts.size(); ++i) EXPECT_EQ(r2.hearts[i].atoms, r3.hearts[i].atoms);
}

TEST(Extension, FullWindowRoundTrips) {
    auto ctx = window_for("1>2", 2);
    auto t = standard_tstructure(ctx);
    auto h = extended_heart(ctx, t, 2);
    TStructureExtension ext(ctx, t, [](const DAtom&) { return true; }, 2);
    EXPECT_FALSE(ext.proper());
    EXPECT_FALSE(ext.note().empty());
    for (const auto& x : enumerate_tstructures(ctx, t, h)) {
        auto l = ext.lambda(x);
        auto mu = ext.mu(l);
        EXPECT_EQ(mu.pair, x.pair);
        EXPECT_EQ(ext.lambda(mu), l);
        EXPECT_EQ(ext.psi_phi_prime(l).pair, mu.pair);
    }
}

TEST(Extension, SubcategoryMustContainTheHeart) {
    auto ctx = window_for("1>2", 1);
    auto t = standard_tstructure(ctx);
    EXPECT_THROW(TStructureExtension(ctx, t, [](const DAtom& a) { return a.shift != 0; }, 1), DomainError);
}
