#include <gtest/gtest.h>

#include <memory>

#include "tilt/dercat.hpp"

using namespace tilt;

namespace {

DAtom at(int lo, int hi, int shift = 0) { return {{lo, hi}, shift}; }

}  // namespace

TEST(DAtoms, OrderIsShiftThenModule) {
    EXPECT_LT(at(2, 2, -1), at(1, 1, 0));
    EXPECT_LT(at(1, 1, 0), at(1, 2, 0));
    EXPECT_EQ(name(at(1, 2, -3)), "M[1,2]@-3");
    EXPECT_EQ(name(DObj{}), "0");
}

TEST(Resolution, ProjectiveResolutionHasCohomologyInDegreeZero) {
    for (const auto& q : all_orientations(3))
        for (const auto& m : all_indecomposables(q)) {
            auto c = resolution(q, realize(q, m));
            EXPECT_LE(c.terms.size(), 2u);
            EXPECT_EQ(cohomology_atoms(c), (DObj{{m, 0}})) << q.spec() << " " << name(m);
        }
}

TEST(DerivedHom, ChainMapsModuloHomotopyMatchHomAndExt) {
    for (int n = 2; n <= 3; ++n)
        for (const auto& q : all_orientations(n)) {
            DerivedCategory dc(q);
            for (const auto& a : dc.indecs())
                for (const auto& b : dc.indecs())
                    for (int k = -1; k <= 2; ++k) {
                        DAtom x{a, 0}, y{b, k};
                        EXPECT_EQ(dc.hom_basis_D(x, y).size(), dc.hom_dim_D(x, y))
                            << q.spec() << " " << name(x) << " -> " << name(y);
                    }
        }
}

TEST(DerivedHom, ShiftInvariance) {
    DerivedCategory dc(parse_quiver("1>2<3"));
    for (const auto& a : dc.indecs())
        for (const auto& b : dc.indecs())
            EXPECT_EQ(dc.hom_dim_D({a, 1}, {b, 2}), dc.hom_dim_D({a, -2}, {b, -1}));
}

TEST(Cone, ConeOfTheNonsplitMapIsTheMiddleTerm) {
    // S1[-1] -> S2 is the extension class of 0 -> S2 -> P1 -> S1 -> 0; its cone is P1.
    DerivedCategory dc(parse_quiver("1>2"));
    auto basis = dc.hom_basis_D(at(1, 1, -1), at(2, 2, 0));
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(dc.cone_of({at(1, 1, -1)}, at(2, 2, 0), basis[0]), (DObj{at(1, 2, 0)}));
}

TEST(Cone, ConeOfZeroMapIsASum) {
    DerivedCategory dc(parse_quiver("1>2"));
    ChainMap zero;
    auto got = dc.cone_of({at(1, 1, 0)}, at(2, 2, 0), zero);
    EXPECT_EQ(got, (DObj{at(2, 2, 0), at(1, 1, 1)}));
}

TEST(Triangles, SearchFindsAndRechecksWitnesses) {
    DerivedCategory dc(parse_quiver("1>2"));
    auto w = dc.triangle_search(
        at(1, 2, 0), [](const DAtom& a) { return a == DAtom{{2, 2}, 0}; },
        [](const DAtom& a) { return a == DAtom{{1, 1}, 0}; });
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->u, (DObj{at(2, 2, 0)}));
    EXPECT_EQ(w->v, (DObj{at(1, 1, 0)}));
    EXPECT_TRUE(dc.recheck(*w));
    // P1 has no factorization through S1 then S2
    EXPECT_FALSE(dc.triangle_search(
                        at(1, 2, 0), [](const DAtom& a) { return a == DAtom{{1, 1}, 0}; },
                        [](const DAtom& a) { return a == DAtom{{2, 2}, 0}; })
                     .has_value());
}

TEST(Triangles, SearchUsesShiftedTorsionPart) {
    // rotating S2 -> P1 -> S1 -> S2[1] puts S1 in add(P1) * add(S2[1])
    DerivedCategory dc(parse_quiver("1>2"));
    auto w = dc.triangle_search(
        at(1, 1, 0), [](const DAtom& a) { return a == DAtom{{1, 2}, 0}; },
        [](const DAtom& a) { return a == DAtom{{2, 2}, 1}; });
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(dc.recheck(*w));
}

TEST(Star, ProductOfSimples) {
    DerivedCategory dc(parse_quiver("1>2"));
    auto s = star(dc, {at(2, 2)}, {at(1, 1)});
    EXPECT_EQ(s, (std::vector<DAtom>{at(1, 1), at(1, 2), at(2, 2)}));
    auto t = star(dc, {at(1, 1)}, {at(2, 2)});
    EXPECT_EQ(t, (std::vector<DAtom>{at(1, 1), at(2, 2)}));
}

TEST(WindowPairs, BufferViolationIsRejected) {
    DerivedCategory dc(parse_quiver("1>2"));
    Window w{-1, 1};
    std::vector<DAtom> torsion, free_atoms;
    for (const auto& m : dc.indecs()) {
        torsion.push_back({m, 1});
        free_atoms.push_back({m, -1});
    }
    auto ok = WindowPair::from_sets(w, torsion, free_atoms);
    EXPECT_NO_THROW(check_buffer(dc, ok));
    torsion.pop_back();
    EXPECT_THROW(check_buffer(dc, WindowPair::from_sets(w, torsion, free_atoms)), DomainError);
    EXPECT_THROW(WindowPair::from_sets(w, {at(1, 1)}, {at(1, 1)}), DomainError);
}

TEST(WindowPairs, StandardPairIsAnSTorsionPair) {
    DerivedCategory dc(parse_quiver("1>2"));
    Window w{-2, 2};
    std::vector<DAtom> torsion, free_atoms;
    for (const auto& a : w.atoms(dc.indecs())) (a.shift >= 0 ? torsion : free_atoms).push_back(a);
    auto rep = is_torsion_pair_D(dc, WindowPair::from_sets(w, torsion, free_atoms), true, true);
    EXPECT_TRUE(rep.is_torsion());
    EXPECT_EQ(rep.s_torsion, std::optional<bool>(true));
    EXPECT_EQ(rep.t_structure, std::optional<bool>(true));
}

TEST(WindowPairs, DetectsHomViolation) {
    DerivedCategory dc(parse_quiver("1>2"));
    Window w{-1, 1};
    std::vector<DAtom> torsion{at(2, 2, 0)}, free_atoms{at(1, 2, 0)};
    for (const auto& m : dc.indecs()) {
        torsion.push_back({m, 1});
        free_atoms.push_back({m, -1});
    }
    auto rep = is_torsion_pair_D(dc, WindowPair::from_sets(w, torsion, free_atoms), false, false);
    EXPECT_FALSE(rep.tp1);
}

TEST(Truncation, StandardTruncationSplitsByShift) {
    DerivedCategory dc(parse_quiver("1>2"));
    Window w{-2, 2};
    std::vector<DAtom> torsion, free_atoms;
    for (const auto& a : w.atoms(dc.indecs())) (a.shift >= 0 ? torsion : free_atoms).push_back(a);
    auto t = WindowPair::from_sets(w, torsion, free_atoms);
    auto tr = truncate(dc, t, {at(1, 1, 0), at(1, 2, -1)}, 0);
    EXPECT_EQ(tr.below, (DObj{at(1, 1, 0)}));
    EXPECT_EQ(tr.above, (DObj{at(1, 2, -1)}));
}
