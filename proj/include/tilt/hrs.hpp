#pragma once

// Extended hearts of t-structures on a window of D^b(mod kQ): the correspondence
// with s-torsion pairs, generalized HRS tilting, and extension of t-structures
// from a triangulated subcategory.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tilt/dercat.hpp"
#include "tilt/errors.hpp"
#include "tilt/torspairs.hpp"

namespace tilt {

// A t-structure (U, V[1]) given by its s-torsion pair (U, V) on a window context.
struct TStructureDesc {
    TorsionPairRecord pair;

    const Subcat& aisle() const { return pair.U; }
    const Subcat& coaisle_shifted() const { return pair.V; }  // U^{>=1}
};

inline TStructureDesc make_tstructure(const WindowContext& ctx, const Subcat& aisle) {
    if (ctx.restricted()) throw ContractError("t-structures live on an unrestricted window");
    auto r = is_torsion_pair(ctx, aisle, ctx.right_perp(aisle));
    if (!r.is_s_torsion) throw DomainError("not a t-structure: " + r.witness, r.witness);
    if (!ctx.subset(ctx.shift(aisle, 1), aisle))
        throw DomainError("aisle is not closed under positive shift");
    return {r};
}

inline TStructureDesc standard_tstructure(const WindowContext& ctx) {
    std::vector<DAtom> aisle;
    for (const auto& a : ctx.atoms())
        if (a.shift >= 0) aisle.push_back(a);
    return make_tstructure(ctx, ctx.torsion_class(aisle));
}

inline TStructureDesc from_window_pair(const WindowContext& ctx, const WindowPair& p) {
    auto [u, v] = ctx.from_window_pair(p);
    auto r = is_torsion_pair(ctx, u, v);
    if (!r.is_s_torsion) throw DomainError("not a t-structure: " + r.witness, r.witness);
    if (!ctx.subset(ctx.shift(u, 1), u)) throw DomainError("aisle is not closed under positive shift");
    return {r};
}

struct ExtendedHeart {
    int m = 1;
    std::vector<DAtom> atoms;  // sorted
    std::optional<TStructureDesc> source;

    friend bool operator==(const ExtendedHeart& a, const ExtendedHeart& b) { return a.m == b.m && a.atoms == b.atoms; }
};

// H[m-1] * ... * H for an atom set H.
inline std::vector<DAtom> iterated_star(const DerivedCategory& dc, const std::vector<DAtom>& h, int m) {
    std::vector<DAtom> acc = h;
    for (int k = 1; k < m; ++k) acc = star(dc, shift_atoms(h, k), acc);
    return acc;
}

// m-H = U^{<=0} cap U^{>=1-m}, i.e. U cap V[m] in the s-torsion encoding.
inline ExtendedHeart extended_heart(const WindowContext& ctx, const TStructureDesc& t, int m,
                                    std::vector<Check>* checks = nullptr) {
    if (m < 1) throw ContractError("m must be positive");
    const Window w = ctx.window();
    for (const auto& mod : ctx.category().indecs())
        for (int s = w.hi + 1; s <= w.hi + m; ++s)
            if (ctx.contains(t.pair.V, DAtom{mod, s - m}))
                throw DomainError("window too narrow: need hi >= " + std::to_string(s));
    Subcat e = ctx.meet(t.pair.U, ctx.shift(t.pair.V, m));
    for (const auto& a : e.atoms)
        if (a.shift == w.lo || a.shift == w.hi)
            throw DomainError("window too narrow: extended heart reaches shift " + std::to_string(a.shift));
    ExtendedHeart out{m, e.atoms, t};
    if (checks) {
        auto h = ctx.members(ctx.meet(t.pair.U, ctx.shift(t.pair.V, 1)));
        auto st = iterated_star(ctx.category(), h, m);
        checks->push_back({"extended heart equals iterated star of the heart", st == out.atoms,
                           st == out.atoms ? "" : name(DObj(st))});
    }
    return out;
}

inline WindowContext heart_context(const WindowContext& ctx, const ExtendedHeart& h) { return ctx.restrict(h.atoms); }

// Direction heartward: t-structure in tstr[U[m], U] -> s-torsion pair in m-H.
inline TorsionPairRecord tstr_to_heart(const WindowContext& ctx, const TStructureDesc& t, int m,
                                       const TStructureDesc& x) {
    Subcat um = ctx.shift(t.pair.U, m);
    if (!ctx.subset(um, x.pair.U)) throw DomainError("payload violates U[m] <= aisle");
    if (!ctx.subset(x.pair.U, t.pair.U)) throw DomainError("payload violates aisle <= U");
    auto h = extended_heart(ctx, t, m);
    auto hc = heart_context(ctx, h);
    std::vector<DAtom> tt, ff;
    for (const auto& a : h.atoms) {
        if (ctx.contains(x.pair.U, a)) tt.push_back(a);
        if (ctx.contains(x.pair.V, a)) ff.push_back(a);
    }
    auto r = is_torsion_pair(hc, hc.make(tt), hc.make(ff));
    if (!r.is_s_torsion) throw DomainError("heartward image is not s-torsion: " + r.witness, r.witness);
    return r;
}

// Direction t-structureward: (T, F) -> (U[m] * T, F * V), i.e. aisle U^{<=-m} * T, coaisle F[1] * U^{>=0}.
inline TStructureDesc heart_to_tstr(const WindowContext& ctx, const TStructureDesc& t, int m,
                                    const TorsionPairRecord& tf) {
    auto h = extended_heart(ctx, t, m);
    auto hc = heart_context(ctx, h);
    auto check = is_torsion_pair(hc, hc.rewrap(tf.U), hc.rewrap(tf.V));
    if (!check.is_s_torsion) throw DomainError("payload is not an s-torsion pair in m-H: " + check.witness);
    Subcat um = ctx.shift(t.pair.U, m);
    Subcat tt = ctx.rewrap(tf.U), ff = ctx.rewrap(tf.V);
    std::vector<DAtom> x, y;
    for (const auto& a : ctx.atoms()) {
        if (ctx.contains(um, a) || tt.has(a) || ctx.factor(um, tt, a)) x.push_back(a);
        if (ff.has(a) || ctx.contains(t.pair.V, a) || ctx.factor(ff, t.pair.V, a)) y.push_back(a);
    }
    auto r = is_torsion_pair(ctx, ctx.torsion_class(x), ctx.free_class(y));
    if (!r.is_s_torsion) throw DomainError("t-structureward image is not a t-structure: " + r.witness, r.witness);
    if (!ctx.subset(ctx.shift(r.U, 1), r.U)) throw DomainError("t-structureward image aisle not shift closed");
    return {r};
}

// E1 <= E2 iff E1 in E2[m] * E2 and E2 in E1 * E1[-m].
inline bool rel_leq_hearts(const DerivedCategory& dc, const ExtendedHeart& e1, const ExtendedHeart& e2) {
    if (e1.m != e2.m) throw ContractError("extended hearts of different width");
    auto inside = [&](const std::vector<DAtom>& xs, const std::vector<DAtom>& a, const std::vector<DAtom>& b) {
        std::set<DAtom> sa(a.begin(), a.end()), sb(b.begin(), b.end());
        for (const auto& x : xs)
            if (!dc.triangle_search(x, [&](const DAtom& t) { return sa.count(t) > 0; },
                                    [&](const DAtom& t) { return sb.count(t) > 0; }))
                return false;
        return true;
    };
    return inside(e1.atoms, shift_atoms(e2.atoms, e2.m), e2.atoms) &&
           inside(e2.atoms, e1.atoms, shift_atoms(e1.atoms, -e1.m));
}

// F[m] * T, certified through the t-structure it comes from.
inline ExtendedHeart hrs_tilt(const WindowContext& ctx, const ExtendedHeart& h, const TorsionPairRecord& tf,
                              std::vector<Check>* checks = nullptr) {
    if (!h.source) throw ContractError("hrs_tilt needs an extended heart with its t-structure");
    auto hc = heart_context(ctx, h);
    auto verified = is_torsion_pair(hc, hc.rewrap(tf.U), hc.rewrap(tf.V));
    if (!verified.is_s_torsion) throw DomainError("tilt payload is not an s-torsion pair: " + verified.witness);
    auto atoms = star(ctx.category(), shift_atoms(tf.V.atoms, h.m), tf.U.atoms);
    auto source = heart_to_tstr(ctx, *h.source, h.m, tf);
    auto certified = extended_heart(ctx, source, h.m);
    if (checks)
        checks->push_back({"tilt equals extended heart of the corresponding t-structure", certified.atoms == atoms,
                           certified.atoms == atoms ? "" : name(DObj(atoms))});
    return ExtendedHeart{h.m, atoms, source};
}

// (H cap E, H cap E[-m]) for E <= H.
inline TorsionPairRecord hrs_untilt(const WindowContext& ctx, const ExtendedHeart& h, const ExtendedHeart& e) {
    if (!rel_leq_hearts(ctx.category(), e, h)) throw DomainError("untilt payload does not satisfy E <= H");
    auto hc = heart_context(ctx, h);
    std::set<DAtom> se(e.atoms.begin(), e.atoms.end());
    std::vector<DAtom> t, f;
    for (const auto& a : h.atoms) {
        if (se.count(a)) t.push_back(a);
        if (se.count(shifted(a, h.m))) f.push_back(a);
    }
    auto r = is_torsion_pair(hc, hc.make(t), hc.make(f));
    if (!r.is_s_torsion) throw DomainError("untilt image is not an s-torsion pair: " + r.witness, r.witness);
    return r;
}

inline std::vector<DAtom> intersect(const std::vector<DAtom>& a, const std::vector<DAtom>& b) {
    std::vector<DAtom> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<Check> extended_heart_identities(const DerivedCategory& dc, const ExtendedHeart& h) {
    const int m = h.m;
    const auto& hm = h.atoms;
    auto sh = [&](int k) { return shift_atoms(hm, k); };
    std::vector<Check> out;
    for (int k = 0; k <= 2; ++k) {
        Check c{"no maps from H_m to H_m[-m" + (k ? "-" + std::to_string(k) : std::string()) + "]"};
        for (const auto& a : hm)
            for (const auto& b : sh(-m - k))
                if (c.pass && dc.hom_dim_D(a, b) != 0) {
                    c.pass = false;
                    c.witness = name(a) + " -> " + name(b);
                }
        out.push_back(c);
    }
    {
        Check c{"no maps from H_m[m] to H_m[-1] * H_m[-m-1] * H_m"};
        auto s = star(dc, sh(-1), star(dc, sh(-m - 1), hm));
        for (const auto& a : sh(m))
            for (const auto& b : s)
                if (c.pass && dc.hom_dim_D(a, b) != 0) {
                    c.pass = false;
                    c.witness = name(a) + " -> " + name(b);
                }
        out.push_back(c);
    }
    auto two = star(dc, hm, sh(-m));
    {
        auto lhs = intersect(star(dc, sh(m), hm), two);
        out.push_back({"H_m[m] * H_m meets H_m * H_m[-m] in H_m", lhs == hm, lhs == hm ? "" : name(DObj(lhs))});
    }
    {
        auto a = star(dc, sh(m), two);
        auto b = star(dc, hm, star(dc, sh(-m), sh(-2 * m)));
        auto lhs = intersect(a, b);
        out.push_back({"two-step extended heart recovered by intersection", lhs == two, lhs == two ? "" : name(DObj(lhs))});
    }
    return out;
}

// All s-torsion pairs of m-H.
inline std::vector<TorsionPairRecord> enumerate_stors(const WindowContext& ctx, const ExtendedHeart& h) {
    if (h.atoms.size() > 24) throw DomainError("s-torsion enumeration refused: more than 24 heart atoms");
    return enumerate_torsion_pairs(heart_context(ctx, h), true);
}

// All t-structures in tstr[U[m], U], by brute force over aisles U[m] + S, S inside m-H.
inline std::vector<TStructureDesc> enumerate_tstructures(const WindowContext& ctx, const TStructureDesc& t,
                                                         const ExtendedHeart& h) {
    if (h.atoms.size() > 24) throw DomainError("t-structure enumeration refused: more than 24 heart atoms");
    Subcat um = ctx.shift(t.pair.U, h.m);
    std::vector<TStructureDesc> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.atoms.size()); ++mask) {
        auto chosen = um.atoms;
        for (std::size_t i = 0; i < h.atoms.size(); ++i)
            if ((mask >> i) & 1u) chosen.push_back(h.atoms[i]);
        Subcat x = ctx.torsion_class(chosen);
        Subcat y = ctx.right_perp(x);
        if (!(ctx.left_perp(y) == x)) continue;
        auto r = is_torsion_pair(ctx, x, y);
        if (!r.is_s_torsion || !ctx.subset(ctx.shift(x, 1), x)) continue;
        out.push_back({r});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return by_class_order(a.pair, b.pair); });
    return out;
}

struct HrsEnumeration {
    ExtendedHeart heart;
    std::vector<TorsionPairRecord> stors;    // s-torsion pairs of m-H
    std::vector<ExtendedHeart> hearts;       // tilts, aligned with stors
    std::vector<TStructureDesc> tstructures; // aligned with stors
    HasseGraph stors_graph;
    HasseGraph hearts_graph;
    HasseGraph tstr_graph;
    std::vector<Check> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

inline HrsEnumeration hrs_enumerate(const WindowContext& ctx, const TStructureDesc& t, int m) {
    HrsEnumeration res;
    const auto& dc = ctx.category();
    res.heart = extended_heart(ctx, t, m, &res.checks);
    auto hc = heart_context(ctx, res.heart);
    res.stors = enumerate_stors(ctx, res.heart);
    const std::size_t n = res.stors.size();

    Check consistency{"tilt equals extended heart of the corresponding t-structure"};
    for (const auto& tf : res.stors) {
        std::vector<Check> local;
        res.hearts.push_back(hrs_tilt(ctx, res.heart, tf, &local));
        for (const auto& c : local)
            if (!c.pass && consistency.pass) consistency = c;
        res.tstructures.push_back(*res.hearts.back().source);
    }
    res.checks.push_back(consistency);

    auto add = [&](Check c) { res.checks.push_back(std::move(c)); };

    Check distinct{"tilted hearts are distinct"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (res.hearts[i] == res.hearts[j] && distinct.pass) {
                distinct.pass = false;
                distinct.witness = std::to_string(i) + "," + std::to_string(j);
            }
    add(distinct);

    Check below{"tilted hearts lie below m-H"}, untilt{"untilt after tilt is the identity"},
        retilt{"tilt after untilt is the identity"}, corr{"heartward after t-structureward is the identity"};
    for (std::size_t i = 0; i < n; ++i) {
        if (!rel_leq_hearts(dc, res.hearts[i], res.heart) && below.pass) {
            below.pass = false;
            below.witness = std::to_string(i);
        }
        auto back = hrs_untilt(ctx, res.heart, res.hearts[i]);
        if (!(back == res.stors[i]) && untilt.pass) {
            untilt.pass = false;
            untilt.witness = name(res.stors[i].U);
        }
        if (!(hrs_tilt(ctx, res.heart, back) == res.hearts[i]) && retilt.pass) {
            retilt.pass = false;
            retilt.witness = std::to_string(i);
        }
        auto hw = tstr_to_heart(ctx, t, m, res.tstructures[i]);
        if (!(hw == res.stors[i]) && corr.pass) {
            corr.pass = false;
            corr.witness = name(res.stors[i].U);
        }
    }
    add(below);
    add(untilt);
    add(retilt);
    add(corr);

    // Independent enumeration of tstr[U[m], U].
    auto brute = enumerate_tstructures(ctx, t, res.heart);
    Check complete{"t-structure images equal brute-force tstr[U[m],U]"};
    complete.pass = brute.size() == n;
    for (const auto& b : brute)
        if (std::none_of(res.tstructures.begin(), res.tstructures.end(),
                         [&](const TStructureDesc& x) { return x.pair == b.pair; }))
            complete.pass = false;
    if (!complete.pass) complete.witness = std::to_string(brute.size()) + " vs " + std::to_string(n);
    add(complete);
    Check corr2{"t-structureward after heartward is the identity"};
    for (const auto& b : brute)
        if (!(heart_to_tstr(ctx, t, m, tstr_to_heart(ctx, t, m, b)).pair == b.pair)) {
            corr2.pass = false;
            corr2.witness = name(b.pair.U);
            break;
        }
    add(corr2);

    // Orders: inclusion of torsion classes, <= on hearts, inclusion of aisles.
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) leq[i][j] = rel_leq_hearts(dc, res.hearts[i], res.hearts[j]);
    Check po{"<= is a partial order on tilted hearts"};
    for (std::size_t i = 0; i < n; ++i) {
        if (!leq[i][i]) po.pass = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && leq[i][j] && leq[j][i]) po.pass = false;
            for (std::size_t k = 0; k < n; ++k)
                if (leq[i][j] && leq[j][k] && !leq[i][k]) po.pass = false;
        }
    }
    add(po);
    Check mono{"tilt and t-structureward maps are order preserving"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool a = hc.subset(hc.rewrap(res.stors[i].U), hc.rewrap(res.stors[j].U));
            bool b = leq[i][j];
            bool c = ctx.subset(res.tstructures[i].pair.U, res.tstructures[j].pair.U);
            if ((a != b || a != c) && mono.pass) {
                mono.pass = false;
                mono.witness = std::to_string(i) + " vs " + std::to_string(j);
            }
        }
    add(mono);

    res.stors_graph = build_hasse(hc, res.stors);
    res.hearts_graph.nodes.clear();
    for (std::size_t i = 0; i < n; ++i) {
        res.hearts_graph.nodes.push_back(ctx.make(res.hearts[i].atoms));
        res.hearts_graph.boxed.push_back(false);
    }
    res.hearts_graph.edges = cover_edges(n, [&](std::size_t i, std::size_t j) { return leq[i][j]; });
    std::vector<TorsionPairRecord> tp;
    for (const auto& x : res.tstructures) tp.push_back(x.pair);
    res.tstr_graph = build_hasse(ctx, tp);
    add({"s-torsion and heart graphs isomorphic", isomorphic(res.stors_graph, res.hearts_graph)});
    add({"s-torsion and t-structure graphs isomorphic", isomorphic(res.stors_graph, res.tstr_graph)});
    return res;
}

// Maps between tstr[U[m],U] on the window and tstr[U_S[m],U_S] on a
// subcategory S given by an atom predicate.
class TStructureExtension {
public:
    TStructureExtension(const WindowContext& ctx, TStructureDesc t, const AtomPred& in_s, int m)
        : ctx_(ctx), t_(std::move(t)), m_(m) {
        std::vector<DAtom> s_atoms;
        for (const auto& a : ctx.atoms())
            if (in_s(a)) s_atoms.push_back(a);
        proper_ = s_atoms.size() != ctx.atoms().size();
        sctx_ = std::make_unique<WindowContext>(proper_ ? ctx.restrict(s_atoms) : ctx);
        heart_ = extended_heart(ctx, t_, m);
        auto h1 = ctx.members(ctx.meet(t_.pair.U, ctx.shift(t_.pair.V, 1)));
        for (const auto& a : h1)
            if (!in_s(a)) throw DomainError("heart is not contained in S: " + name(a), name(a));
        // Restriction is a t-structure on S iff truncations of S-objects stay in S.
        auto wp = ctx.to_window_pair(t_.pair.U, t_.pair.V);
        for (const auto& a : s_atoms) {
            auto tr = truncate(ctx.category(), wp, {a}, 0);
            for (const auto& b : tr.below)
                if (ctx.window().contains(b.shift) && !in_s(b))
                    throw DomainError("restriction is not a t-structure on S: truncation of " + name(a) + " leaves S");
        }
        s_standard_ = restrict_pair(t_.pair);
    }

    bool proper() const { return proper_; }
    std::string note() const {
        return proper_ ? "S is a proper atom subset of the window; it is not triangulated inside a bounded window"
                       : "S equals the window: no strict triangulated S inside D^b containing the heart is producible";
    }
    const WindowContext& sub_context() const { return *sctx_; }

    // lambda: (S cap X, S cap Y).
    TorsionPairRecord lambda(const TStructureDesc& x) const {
        Subcat um = ctx_.shift(t_.pair.U, m_);
        if (!ctx_.subset(um, x.pair.U) || !ctx_.subset(x.pair.U, t_.pair.U))
            throw DomainError("lambda payload is outside tstr[U[m],U]");
        auto r = restrict_pair(x.pair);
        if (!r.is_s_torsion) throw DomainError("lambda image is not a t-structure on S: " + r.witness);
        return r;
    }

    // mu: (U[m] * Y_aisle, Y_coaisle * V), in the encoded form.
    TStructureDesc mu(const TorsionPairRecord& y) const {
        Subcat um = ctx_.shift(t_.pair.U, m_);
        Subcat ya = ctx_.rewrap(y.U), yv = ctx_.rewrap(y.V);
        std::vector<DAtom> x, z;
        for (const auto& a : ctx_.atoms()) {
            if (ctx_.contains(um, a) || ctx_.contains(ya, a) || ctx_.factor(um, ya, a)) x.push_back(a);
            if (ctx_.contains(yv, a) || ctx_.contains(t_.pair.V, a) || ctx_.factor(yv, t_.pair.V, a)) z.push_back(a);
        }
        auto r = is_torsion_pair(ctx_, ctx_.torsion_class(x), ctx_.free_class(z));
        if (!r.is_s_torsion) throw DomainError("mu image is not a t-structure: " + r.witness, r.witness);
        return {r};
    }

    // psi after phi' : through the s-torsion pair in m-H.
    TStructureDesc psi_phi_prime(const TorsionPairRecord& y) const {
        auto hc = heart_context(ctx_, heart_);
        std::vector<DAtom> tt, ff;
        for (const auto& a : heart_.atoms) {
            if (sctx_->contains(y.U, a)) tt.push_back(a);
            if (sctx_->contains(y.V, a)) ff.push_back(a);
        }
        auto tf = is_torsion_pair(hc, hc.make(tt), hc.make(ff));
        return heart_to_tstr(ctx_, t_, m_, tf);
    }

private:
    TorsionPairRecord restrict_pair(const TorsionPairRecord& p) const {
        std::vector<DAtom> u, v;
        for (const auto& a : sctx_->atoms()) {
            if (ctx_.contains(p.U, a)) u.push_back(a);
            if (ctx_.contains(p.V, a)) v.push_back(a);
        }
        return is_torsion_pair(*sctx_, sctx_->torsion_class(u), sctx_->free_class(v));
    }

    const WindowContext& ctx_;
    TStructureDesc t_;
    int m_;
    bool proper_ = false;
    std::unique_ptr<WindowContext> sctx_;
    ExtendedHeart heart_;
    TorsionPairRecord s_standard_;
};

}  // namespace tilt
