#pragma once

// Torsion pairs over a finite context of atoms: either mod kQ or a shift window
// of D^b(mod kQ). Verification, enumeration, the interval bijections and Hasse
// graphs.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tilt/dercat.hpp"
#include "tilt/errors.hpp"
#include "tilt/quiverrep.hpp"

namespace tilt {

// add of a finite atom set, optionally with everything above (shift > hi) or
// below (shift < lo) the window of a derived context.
struct Subcat {
    std::string context;
    std::vector<DAtom> atoms;  // sorted, unique
    bool above = false;
    bool below = false;

    bool has(const DAtom& a) const { return std::binary_search(atoms.begin(), atoms.end(), a); }
    friend bool operator==(const Subcat&, const Subcat&) = default;
};

inline std::string name(const Subcat& s, bool with_shift = true) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.atoms.size(); ++i) out += (i ? ", " : "") + name(s.atoms[i], with_shift);
    out += "]";
    if (s.above) out += " + above";
    if (s.below) out += " + below";
    return out;
}

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

class Context {
public:
    virtual ~Context() = default;

    virtual std::string id() const = 0;
    virtual bool derived() const = 0;
    virtual const std::vector<DAtom>& atoms() const = 0;
    virtual std::size_t hom0(const DAtom& a, const DAtom& b) const = 0;
    virtual std::size_t neg1(const DAtom& a, const DAtom& b) const = 0;
    virtual bool contains(const Subcat& s, const DAtom& a) const { return s.has(a); }
    // Witness text when x lies in A * B.
    virtual std::optional<std::string> factor(const Subcat& a, const Subcat& b, const DAtom& x) const = 0;
    // Rejects pairs the context cannot represent faithfully.
    virtual void validate_pair(const Subcat&, const Subcat&) const {}
    virtual bool has_tails() const { return false; }
    // Atoms outside the context's finite atom list, used for tail-aware shifting.
    virtual std::string atom_name(const DAtom& a) const { return name(a, derived()); }

    Subcat make(std::vector<DAtom> atoms, bool above = false, bool below = false) const {
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        return Subcat{id(), std::move(atoms), above && has_tails(), below && has_tails()};
    }
    Subcat torsion_class(std::vector<DAtom> atoms) const { return make(std::move(atoms), true, false); }
    Subcat free_class(std::vector<DAtom> atoms) const { return make(std::move(atoms), false, true); }
    Subcat rewrap(const Subcat& s) const { return make(s.atoms, s.above, s.below); }

    std::vector<DAtom> members(const Subcat& s) const {
        std::vector<DAtom> out;
        for (const auto& a : atoms())
            if (contains(s, a)) out.push_back(a);
        return out;
    }

    // Atoms a with hom0(u, a) = 0 for every u in U.
    Subcat right_perp(const Subcat& u) const {
        auto us = members(u);
        std::vector<DAtom> out;
        for (const auto& a : atoms())
            if (std::all_of(us.begin(), us.end(), [&](const DAtom& x) { return hom0(x, a) == 0; })) out.push_back(a);
        return free_class(out);
    }

    Subcat left_perp(const Subcat& v) const {
        auto vs = members(v);
        std::vector<DAtom> out;
        for (const auto& a : atoms())
            if (std::all_of(vs.begin(), vs.end(), [&](const DAtom& y) { return hom0(a, y) == 0; })) out.push_back(a);
        return torsion_class(out);
    }

    bool subset(const Subcat& a, const Subcat& b) const {
        if (a.above && !b.above) return false;
        if (a.below && !b.below) return false;
        for (const auto& x : atoms())
            if (contains(a, x) && !contains(b, x)) return false;
        return true;
    }

    Subcat meet(const Subcat& a, const Subcat& b) const {
        std::vector<DAtom> out;
        for (const auto& x : atoms())
            if (contains(a, x) && contains(b, x)) out.push_back(x);
        return make(out, a.above && b.above, a.below && b.below);
    }

    // First (a, b) with hom0 != 0 (or neg1 != 0 when negative is set).
    std::optional<std::string> nonvanishing(const Subcat& a, const Subcat& b, bool negative) const {
        auto as = members(a), bs = members(b);
        for (const auto& x : as)
            for (const auto& y : bs)
                if ((negative ? neg1(x, y) : hom0(x, y)) != 0)
                    return std::string(negative ? "E^-1(" : "Hom(") + atom_name(x) + ", " + atom_name(y) + ") != 0";
        return std::nullopt;
    }
};

// One trace-criterion membership decision, kept for oracle comparison.
struct StarQuery {
    std::vector<IndecId> a;
    std::vector<IndecId> b;
    IndecId x;
    bool result = false;
};

class ModuleContext : public Context {
public:
    explicit ModuleContext(const Quiver& q) : shared_(std::make_shared<Shared>(q)) {
        for (const auto& m : shared_->table.indecs()) atoms_.push_back({m, 0});
        id_ = "mod " + q.spec() + " p=" + std::to_string(q.prime());
    }

    ModuleContext restrict(const std::vector<DAtom>& atoms) const {
        ModuleContext out(*this);
        out.atoms_ = atoms;
        std::sort(out.atoms_.begin(), out.atoms_.end());
        out.id_ = id_ + " | " + name(make(atoms), false);
        return out;
    }

    void set_query_log(std::vector<StarQuery>* log) const {
        std::lock_guard<std::mutex> lock(shared_->mu);
        shared_->log = log;
    }

    const Quiver& quiver() const { return shared_->q; }
    const HomTable& table() const { return shared_->table; }

    std::string id() const override { return id_; }
    bool derived() const override { return false; }
    const std::vector<DAtom>& atoms() const override { return atoms_; }
    std::size_t hom0(const DAtom& a, const DAtom& b) const override { return shared_->table.hom(a.module, b.module); }
    std::size_t neg1(const DAtom& a, const DAtom& b) const override { return shared_->table.ext(a.module, b.module); }

    // X in A * B iff the A-trace of X lies in add A and the quotient in add B
    // (exact when Hom(A, B) = 0, which holds wherever this is used).
    std::optional<std::string> factor(const Subcat& a, const Subcat& b, const DAtom& x) const override {
        auto key = std::make_tuple(a.atoms, b.atoms, x);
        {
            std::lock_guard<std::mutex> lock(shared_->mu);
            if (auto it = shared_->cache.find(key); it != shared_->cache.end()) return it->second;
        }
        const Quiver& q = shared_->q;
        std::vector<IndecId> am, bm;
        for (const auto& t : a.atoms) am.push_back(t.module);
        for (const auto& t : b.atoms) bm.push_back(t.module);
        auto tq = trace_quotient(q, am, realize(q, x.module));
        auto sub = decompose(q, as_rep(q, tq.trace));
        auto quo = decompose(q, tq.quotient);
        std::set<IndecId> sa(am.begin(), am.end()), sb(bm.begin(), bm.end());
        bool ok = std::all_of(sub.begin(), sub.end(), [&](const IndecId& m) { return sa.count(m) > 0; }) &&
                  std::all_of(quo.begin(), quo.end(), [&](const IndecId& m) { return sb.count(m) > 0; });
        std::optional<std::string> result;
        if (ok) {
            DObj s, t;
            for (const auto& m : sub) s.push_back({m, 0});
            for (const auto& m : quo) t.push_back({m, 0});
            result = name(s, false) + " -> " + name(x.module) + " -> " + name(t, false);
        }
        std::lock_guard<std::mutex> lock(shared_->mu);
        shared_->cache.emplace(key, result);
        if (shared_->log) shared_->log->push_back({am, bm, x.module, ok});
        return result;
    }

private:
    struct Shared {
        explicit Shared(const Quiver& q_) : q(q_), table(q_) {}
        Quiver q;
        HomTable table;
        std::mutex mu;
        std::vector<StarQuery>* log = nullptr;
        std::map<std::tuple<std::vector<DAtom>, std::vector<DAtom>, DAtom>, std::optional<std::string>> cache;
    };
    std::shared_ptr<Shared> shared_;
    std::vector<DAtom> atoms_;
    std::string id_;
};

// Shift window of D^b(mod kQ). Unrestricted, its subcategories carry tails;
// restricted to a finite atom set (a heart) it behaves as an extension-closed
// subcategory whose triangles must stay inside the set.
class WindowContext : public Context {
public:
    WindowContext(std::shared_ptr<const DerivedCategory> dc, Window w) : dc_(std::move(dc)), window_(w) {
        if (w.lo >= w.hi) throw DomainError("window must satisfy lo < hi");
        atoms_ = w.atoms(dc_->indecs());
        id_ = "D " + dc_->quiver().spec() + " p=" + std::to_string(dc_->quiver().prime()) + " [" +
              std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
    }

    WindowContext restrict(const std::vector<DAtom>& atoms) const {
        WindowContext out(*this);
        out.atoms_ = atoms;
        std::sort(out.atoms_.begin(), out.atoms_.end());
        out.restricted_ = true;
        out.id_ = id_ + " | " + name(make(atoms));
        return out;
    }

    const DerivedCategory& category() const { return *dc_; }
    std::shared_ptr<const DerivedCategory> category_ptr() const { return dc_; }
    const Window& window() const { return window_; }
    bool restricted() const { return restricted_; }

    std::string id() const override { return id_; }
    bool derived() const override { return true; }
    bool has_tails() const override { return !restricted_; }
    const std::vector<DAtom>& atoms() const override { return atoms_; }
    std::size_t hom0(const DAtom& a, const DAtom& b) const override { return dc_->hom_dim_D(a, b); }
    std::size_t neg1(const DAtom& a, const DAtom& b) const override { return dc_->hom_dim_D(a, shifted(b, -1)); }

    bool contains(const Subcat& s, const DAtom& a) const override {
        if (!restricted_) {
            if (a.shift > window_.hi) return s.above;
            if (a.shift < window_.lo) return s.below;
        }
        return s.has(a);
    }

    std::optional<std::string> factor(const Subcat& a, const Subcat& b, const DAtom& x) const override {
        auto w = dc_->triangle_search(x, [&](const DAtom& t) { return contains(a, t); },
                                      [&](const DAtom& t) { return contains(b, t); });
        if (!w) return std::nullopt;
        return w->str();
    }

    void validate_pair(const Subcat& u, const Subcat& v) const override {
        if (restricted_) return;
        if (!u.above || !v.below) throw DomainError("window pair needs torsion above and free below the window");
        for (const auto& m : dc_->indecs()) {
            DAtom top{m, window_.hi}, bottom{m, window_.lo};
            if (!u.has(top)) throw DomainError("buffer invariant violated: " + name(top) + " must be torsion", name(top));
            if (!v.has(bottom))
                throw DomainError("buffer invariant violated: " + name(bottom) + " must be free", name(bottom));
        }
        for (const auto& a : u.atoms)
            if (v.has(a)) throw DomainError("atom " + name(a) + " is both torsion and free", name(a));
    }

    // s[k], read off atomwise with tails.
    Subcat shift(const Subcat& s, int k) const {
        std::vector<DAtom> out;
        for (const auto& a : atoms_)
            if (contains(s, shifted(a, -k))) out.push_back(a);
        return make(out, s.above, s.below);
    }

    WindowPair to_window_pair(const Subcat& u, const Subcat& v) const {
        return WindowPair::from_sets(window_, u.atoms, v.atoms);
    }

    std::pair<Subcat, Subcat> from_window_pair(const WindowPair& p) const {
        if (!(p.window == window_)) throw ContractError("window pair belongs to a different window");
        std::vector<DAtom> t, f;
        for (const auto& [a, c] : p.cls) {
            if (c == AtomClass::Torsion) t.push_back(a);
            if (c == AtomClass::Free) f.push_back(a);
        }
        return {torsion_class(t), free_class(f)};
    }

private:
    std::shared_ptr<const DerivedCategory> dc_;
    Window window_;
    bool restricted_ = false;
    std::vector<DAtom> atoms_;
    std::string id_;
};

struct TorsionPairRecord {
    Subcat U;
    Subcat V;
    bool verified = false;
    bool is_torsion = false;
    bool is_s_torsion = false;
    std::string witness;  // first failing condition
    std::vector<std::pair<DAtom, std::string>> factorizations;

    friend bool operator==(const TorsionPairRecord& a, const TorsionPairRecord& b) {
        return a.U == b.U && a.V == b.V;
    }
};

inline TorsionPairRecord is_torsion_pair(const Context& ctx, const Subcat& u, const Subcat& v) {
    if (u.context != ctx.id() || v.context != ctx.id())
        throw ContractError("torsion pair components belong to a different context");
    ctx.validate_pair(u, v);
    TorsionPairRecord r{u, v};
    r.verified = true;
    if (auto w = ctx.nonvanishing(u, v, false)) {
        r.witness = "TP1: " + *w;
        return r;
    }
    for (const auto& x : ctx.atoms()) {
        if (ctx.contains(u, x) || ctx.contains(v, x)) continue;
        auto f = ctx.factor(u, v, x);
        if (!f) {
            r.witness = "TP2: " + ctx.atom_name(x) + " is not in U * V";
            r.factorizations.clear();
            return r;
        }
        r.factorizations.push_back({x, *f});
    }
    r.is_torsion = true;
    if (auto w = ctx.nonvanishing(u, v, true))
        r.witness = "STP: " + *w;
    else
        r.is_s_torsion = true;
    return r;
}

inline bool by_class_order(const TorsionPairRecord& a, const TorsionPairRecord& b) {
    auto ka = std::make_tuple(!a.U.above, -static_cast<long>(a.U.atoms.size()), a.U.atoms);
    auto kb = std::make_tuple(!b.U.above, -static_cast<long>(b.U.atoms.size()), b.U.atoms);
    return ka < kb;
}

// Every torsion pair of the context, found as torsion classes U = left_perp(right_perp(U)).
inline std::vector<TorsionPairRecord> enumerate_torsion_pairs(const Context& ctx, bool s_only = false,
                                                             std::size_t cap = 24) {
    std::vector<DAtom> free_atoms, forced;
    const auto* wc = dynamic_cast<const WindowContext*>(&ctx);
    for (const auto& a : ctx.atoms()) {
        if (wc && !wc->restricted()) {
            if (a.shift == wc->window().hi) {
                forced.push_back(a);
                continue;
            }
            if (a.shift == wc->window().lo) continue;
        }
        free_atoms.push_back(a);
    }
    if (free_atoms.size() > cap)
        throw DomainError("enumeration refused: " + std::to_string(free_atoms.size()) + " atoms exceed the cap of " +
                          std::to_string(cap));
    std::vector<TorsionPairRecord> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_atoms.size()); ++mask) {
        std::vector<DAtom> chosen = forced;
        for (std::size_t i = 0; i < free_atoms.size(); ++i)
            if ((mask >> i) & 1u) chosen.push_back(free_atoms[i]);
        Subcat u = ctx.torsion_class(chosen);
        Subcat v = ctx.right_perp(u);
        if (!(ctx.left_perp(v) == u)) continue;
        auto r = is_torsion_pair(ctx, u, v);
        if (!r.is_torsion || (s_only && !r.is_s_torsion)) continue;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), by_class_order);
    return out;
}

struct PreceqResult {
    bool holds = false;
    std::string witness;
    std::optional<bool> inclusion_form;  // derived contexts: U1 in U2 and U1[1] in U2
};

inline PreceqResult rel_preceq_detail(const Context& ctx, const TorsionPairRecord& t1, const TorsionPairRecord& t2) {
    PreceqResult r;
    if (auto w = ctx.nonvanishing(t1.U, t2.V, false))
        r.witness = *w;
    else if (auto w2 = ctx.nonvanishing(t1.U, t2.V, true))
        r.witness = *w2;
    else
        r.holds = true;
    if (const auto* wc = dynamic_cast<const WindowContext*>(&ctx); wc && !wc->restricted()) {
        bool inc = ctx.subset(t1.U, t2.U) && ctx.subset(wc->shift(t1.U, 1), t2.U);
        // atoms just below the window can enter the window after shifting
        for (const auto& m : wc->category().indecs()) {
            DAtom a{m, wc->window().lo - 1};
            if (ctx.contains(t1.U, a) && !ctx.contains(t2.U, shifted(a, 1))) inc = false;
        }
        r.inclusion_form = inc;
        if (inc != r.holds) throw std::logic_error("the two forms of the preceq test disagree");
    }
    return r;
}

inline bool rel_preceq(const Context& ctx, const TorsionPairRecord& t1, const TorsionPairRecord& t2) {
    return rel_preceq_detail(ctx, t1, t2).holds;
}

struct IntervalSpec {
    TorsionPairRecord t1;
    TorsionPairRecord t2;
    Subcat heart;  // in the ambient context
    std::vector<Check> checks;
};

inline IntervalSpec heart_of_interval(const Context& ctx, const TorsionPairRecord& t1, const TorsionPairRecord& t2) {
    if (!t1.is_torsion || !t2.is_torsion) throw DomainError("interval endpoints must be verified torsion pairs");
    auto pr = rel_preceq_detail(ctx, t1, t2);
    if (!pr.holds) throw DomainError("t1 is not below t2: " + pr.witness, pr.witness);
    IntervalSpec spec{t1, t2, ctx.meet(t2.U, t1.V), {}};
    if (spec.heart.above || spec.heart.below) throw DomainError("interval heart is not finite");
    Check c1{"U2 = U1 * H"}, c2{"V1 = H * V2"};
    for (const auto& x : ctx.atoms()) {
        if (ctx.contains(t2.U, x) && !ctx.contains(t1.U, x) && !ctx.contains(spec.heart, x) &&
            !ctx.factor(t1.U, spec.heart, x) && c1.pass) {
            c1.pass = false;
            c1.witness = ctx.atom_name(x);
        }
        if (ctx.contains(t1.V, x) && !ctx.contains(spec.heart, x) && !ctx.contains(t2.V, x) &&
            !ctx.factor(spec.heart, t2.V, x) && c2.pass) {
            c2.pass = false;
            c2.witness = ctx.atom_name(x);
        }
    }
    spec.checks = {c1, c2};
    return spec;
}

// Heart of an interval as a context in its own right.
inline std::unique_ptr<Context> heart_context(const Context& ctx, const IntervalSpec& spec) {
    if (const auto* mc = dynamic_cast<const ModuleContext*>(&ctx))
        return std::make_unique<ModuleContext>(mc->restrict(spec.heart.atoms));
    if (const auto* wc = dynamic_cast<const WindowContext*>(&ctx))
        return std::make_unique<WindowContext>(wc->restrict(spec.heart.atoms));
    throw ContractError("unsupported context");
}

// (U cap V1, V cap U2) in the heart.
inline TorsionPairRecord phi(const Context& ctx, const Context& heart, const IntervalSpec& spec,
                             const TorsionPairRecord& t) {
    if (!rel_preceq(ctx, spec.t1, t) || !rel_preceq(ctx, t, spec.t2))
        throw DomainError("phi: torsion pair is outside the interval");
    std::vector<DAtom> tt, ff;
    for (const auto& a : heart.atoms()) {
        if (ctx.contains(t.U, a)) tt.push_back(a);
        if (ctx.contains(t.V, a)) ff.push_back(a);
    }
    auto r = is_torsion_pair(heart, heart.make(tt), heart.make(ff));
    if (!r.is_torsion) throw DomainError("phi: image is not a torsion pair in the heart: " + r.witness, r.witness);
    return r;
}

// E^-1(T, V2) = 0 and E^-1(U1, F) = 0.
inline std::optional<std::string> psi_precondition_violation(const Context& ctx, const IntervalSpec& spec,
                                                       const TorsionPairRecord& tf) {
    if (auto w = ctx.nonvanishing(ctx.rewrap(tf.U), spec.t2.V, true)) return w;
    if (auto w = ctx.nonvanishing(spec.t1.U, ctx.rewrap(tf.V), true)) return w;
    return std::nullopt;
}

// (U1 * T, F * V2) in the ambient context.
inline TorsionPairRecord psi(const Context& ctx, const IntervalSpec& spec, const TorsionPairRecord& tf) {
    if (auto w = psi_precondition_violation(ctx, spec, tf)) throw DomainError("psi: payload violates E^-1 condition: " + *w, *w);
    Subcat t = ctx.rewrap(tf.U), f = ctx.rewrap(tf.V);
    std::vector<DAtom> uu, vv;
    for (const auto& x : ctx.atoms()) {
        if (ctx.contains(spec.t1.U, x) || ctx.contains(t, x) || ctx.factor(spec.t1.U, t, x)) uu.push_back(x);
        if (ctx.contains(f, x) || ctx.contains(spec.t2.V, x) || ctx.factor(f, spec.t2.V, x)) vv.push_back(x);
    }
    auto r = is_torsion_pair(ctx, ctx.torsion_class(uu), ctx.free_class(vv));
    if (!r.is_torsion) throw DomainError("psi: image is not a torsion pair: " + r.witness, r.witness);
    return r;
}

struct HasseGraph {
    std::vector<Subcat> nodes;  // torsion classes
    std::vector<bool> boxed;    // s-torsion
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // larger -> smaller
};

// Covers of a strict order given by less(i, j).
inline std::vector<std::pair<std::size_t, std::size_t>> cover_edges(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less) {
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lt[i][j] = i != j && less(i, j);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (!lt[i][j]) continue;
            bool cover = true;
            for (std::size_t k = 0; k < n && cover; ++k)
                if (k != i && k != j && lt[i][k] && lt[k][j]) cover = false;
            if (cover) edges.push_back({j, i});
        }
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline HasseGraph build_hasse(const Context& ctx, const std::vector<TorsionPairRecord>& pairs) {
    HasseGraph g;
    for (const auto& t : pairs) {
        g.nodes.push_back(t.U);
        g.boxed.push_back(t.is_s_torsion);
    }
    g.edges = cover_edges(pairs.size(), [&](std::size_t i, std::size_t j) {
        return ctx.subset(pairs[i].U, pairs[j].U) && !(pairs[i].U == pairs[j].U);
    });
    return g;
}

inline bool isomorphic(const std::vector<std::pair<std::size_t, std::size_t>>& ea, std::size_t na,
                       const std::vector<std::pair<std::size_t, std::size_t>>& eb, std::size_t nb) {
    if (na != nb || ea.size() != eb.size()) return false;
    std::vector<std::vector<bool>> a(na, std::vector<bool>(na)), b(nb, std::vector<bool>(nb));
    std::vector<int> ina(na), outa(na), inb(nb), outb(nb);
    for (auto [s, t] : ea) a[s][t] = true, ++outa[s], ++ina[t];
    for (auto [s, t] : eb) b[s][t] = true, ++outb[s], ++inb[t];
    std::vector<int> map(na, -1);
    std::vector<bool> used(nb, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == na) return true;
        for (std::size_t j = 0; j < nb; ++j) {
            if (used[j] || ina[i] != inb[j] || outa[i] != outb[j]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < i && ok; ++k)
                ok = a[i][k] == b[j][map[k]] && a[k][i] == b[map[k]][j];
            if (!ok) continue;
            map[i] = static_cast<int>(j);
            used[j] = true;
            if (rec(i + 1)) return true;
            used[j] = false;
        }
        map[i] = -1;
        return false;
    };
    return rec(0);
}

inline bool isomorphic(const HasseGraph& a, const HasseGraph& b) {
    return isomorphic(a.edges, a.nodes.size(), b.edges, b.nodes.size());
}

struct IntervalResult {
    IntervalSpec spec;
    std::vector<TorsionPairRecord> interval;  // Psi images, aligned with heart
    std::vector<TorsionPairRecord> heart;     // torsion pairs of the heart passing the E^-1 filter
    std::size_t heart_unfiltered = 0;
    std::vector<std::pair<std::size_t, std::size_t>> bijection;
    HasseGraph interval_graph;
    HasseGraph heart_graph;
    std::vector<Check> checks;

    std::size_t s_count(const std::vector<TorsionPairRecord>& v) const {
        return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const auto& t) { return t.is_s_torsion; }));
    }
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

// Brute force: all torsion pairs t with t1 <= t <= t2.
inline std::vector<TorsionPairRecord> brute_force_interval(const Context& ctx, const IntervalSpec& spec) {
    std::vector<TorsionPairRecord> out;
    auto keep = [&](const TorsionPairRecord& t) {
        return t.is_torsion && rel_preceq(ctx, spec.t1, t) && rel_preceq(ctx, t, spec.t2);
    };
    if (const auto* wc = dynamic_cast<const WindowContext*>(&ctx); wc && !wc->restricted()) {
        // U1 <= U <= U2, so only atoms of U2 \ U1 are free to choose.
        std::vector<DAtom> base = ctx.members(spec.t1.U), extra;
        for (const auto& a : ctx.atoms())
            if (ctx.contains(spec.t2.U, a) && !ctx.contains(spec.t1.U, a)) extra.push_back(a);
        if (extra.size() > 24) throw DomainError("interval brute force refused: too many candidate atoms");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra.size()); ++mask) {
            auto chosen = base;
            for (std::size_t i = 0; i < extra.size(); ++i)
                if ((mask >> i) & 1u) chosen.push_back(extra[i]);
            Subcat u = ctx.torsion_class(chosen);
            Subcat v = ctx.right_perp(u);
            if (!(ctx.left_perp(v) == u)) continue;
            auto t = is_torsion_pair(ctx, u, v);
            if (keep(t)) out.push_back(t);
        }
    } else {
        for (auto& t : enumerate_torsion_pairs(ctx))
            if (keep(t)) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), by_class_order);
    return out;
}

inline IntervalResult enumerate_interval(const Context& ctx, const IntervalSpec& spec, bool s_only = false,
                                         bool brute_force = true) {
    IntervalResult res;
    res.spec = spec;
    res.checks = spec.checks;
    auto hctx = heart_context(ctx, spec);
    auto all_heart = enumerate_torsion_pairs(*hctx);
    res.heart_unfiltered = all_heart.size();
    for (auto& tf : all_heart) {
        if (psi_precondition_violation(ctx, spec, tf)) continue;
        if (s_only && !tf.is_s_torsion) continue;
        res.heart.push_back(tf);
    }
    for (std::size_t i = 0; i < res.heart.size(); ++i) {
        res.interval.push_back(psi(ctx, spec, res.heart[i]));
        res.bijection.push_back({i, i});
    }

    auto add = [&](const std::string& name, bool pass, const std::string& witness = {}) {
        res.checks.push_back({name, pass, pass ? std::string() : witness});
    };

    Check in_interval{"psi lands in the interval"}, round1{"phi after psi is the identity"},
        s_match{"psi preserves s-torsion"};
    for (std::size_t i = 0; i < res.heart.size(); ++i) {
        const auto& a = res.interval[i];
        if (in_interval.pass && !(rel_preceq(ctx, spec.t1, a) && rel_preceq(ctx, a, spec.t2))) {
            in_interval.pass = false;
            in_interval.witness = name(a.U);
        }
        auto back = phi(ctx, *hctx, spec, a);
        if (round1.pass && !(back == res.heart[i])) {
            round1.pass = false;
            round1.witness = name(res.heart[i].U);
        }
        if (s_match.pass && a.is_s_torsion != res.heart[i].is_s_torsion) {
            s_match.pass = false;
            s_match.witness = name(res.heart[i].U);
        }
    }
    res.checks.push_back(in_interval);
    res.checks.push_back(round1);
    res.checks.push_back(s_match);

    if (brute_force) {
        auto brute = brute_force_interval(ctx, spec);
        if (s_only)
            brute.erase(std::remove_if(brute.begin(), brute.end(), [](const auto& t) { return !t.is_s_torsion; }),
                        brute.end());
        auto sorted = res.interval;
        std::sort(sorted.begin(), sorted.end(), by_class_order);
        bool same = sorted.size() == brute.size() && std::equal(sorted.begin(), sorted.end(), brute.begin());
        std::string w;
        if (!same) {
            for (const auto& t : brute)
                if (std::find(sorted.begin(), sorted.end(), t) == sorted.end()) w = "missing " + name(t.U);
            if (w.empty()) w = "count " + std::to_string(sorted.size()) + " vs " + std::to_string(brute.size());
        }
        add("psi image equals brute-force interval", same, w);
        Check round2{"psi after phi is the identity"};
        for (const auto& t : brute) {
            auto b = phi(ctx, *hctx, spec, t);
            if (psi_precondition_violation(ctx, spec, b) || !(psi(ctx, spec, b) == t)) {
                round2.pass = false;
                round2.witness = name(t.U);
                break;
            }
        }
        res.checks.push_back(round2);
    }

    Check order{"order preservation"}, hearts{"heart preservation"};
    for (std::size_t i = 0; i < res.heart.size(); ++i)
        for (std::size_t j = 0; j < res.heart.size(); ++j) {
            bool lhs = hctx->subset(res.heart[i].U, res.heart[j].U);
            bool rhs = ctx.subset(res.interval[i].U, res.interval[j].U);
            if (lhs != rhs && order.pass) {
                order.pass = false;
                order.witness = name(res.heart[i].U) + " vs " + name(res.heart[j].U);
            }
            if (rel_preceq(ctx, res.interval[i], res.interval[j])) {
                if (!rel_preceq(*hctx, res.heart[i], res.heart[j]) && order.pass) {
                    order.pass = false;
                    order.witness = "preceq not preserved at " + name(res.interval[i].U);
                }
                auto h1 = ctx.members(ctx.meet(res.interval[j].U, res.interval[i].V));
                auto h2 = hctx->members(hctx->meet(res.heart[j].U, res.heart[i].V));
                if (h1 != h2 && hearts.pass) {
                    hearts.pass = false;
                    hearts.witness = name(res.interval[i].U) + " / " + name(res.interval[j].U);
                }
            }
        }
    res.checks.push_back(order);
    res.checks.push_back(hearts);

    res.interval_graph = build_hasse(ctx, res.interval);
    res.heart_graph = build_hasse(*hctx, res.heart);
    add("hasse graphs isomorphic", isomorphic(res.interval_graph, res.heart_graph));

    // Covers of the strict preceq relation, compared with inclusion covers (informational).
    auto pre_edges = cover_edges(res.interval.size(), [&](std::size_t i, std::size_t j) {
        return rel_preceq(ctx, res.interval[i], res.interval[j]);
    });
    Check agree{"inclusion covers agree with preceq covers"};
    agree.pass = pre_edges == res.interval_graph.edges;
    if (!agree.pass) agree.witness = "orders differ on this interval";
    res.checks.push_back(agree);
    return res;
}

// Reported but never counted as a failure: the two orders may legitimately differ.
inline bool is_informational(const Check& c) { return c.name == "inclusion covers agree with preceq covers"; }

inline std::optional<Check> first_failure(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass && !is_informational(c)) return c;
    return std::nullopt;
}

// Exhaustive oracle for X in A * B over all subrepresentations of X.
inline bool star_oracle(const ModuleContext& ctx, const std::vector<IndecId>& a, const std::vector<IndecId>& b,
                        const IndecId& x) {
    const Quiver& q = ctx.quiver();
    Rep rx = realize(q, x);
    std::set<IndecId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    for (const auto& sub : all_subreps(q, rx, 12))
        if (in_add(q, as_rep(q, sub), sa) && in_add(q, quotient(q, sub).rep, sb)) return true;
    return false;
}

}  // namespace tilt
