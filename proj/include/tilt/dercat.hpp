#pragma once

// Bounded derived category of a type-A path algebra. Objects are finite sums of
// shifted interval modules; morphisms and cones are computed on two-term
// projective resolutions.

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tilt/errors.hpp"
#include "tilt/exactlin.hpp"
#include "tilt/quiverrep.hpp"

namespace tilt {

// The object M[shift]: a stalk complex with M in cohomological degree -shift.
struct DAtom {
    IndecId module;
    int shift = 0;

    friend bool operator==(const DAtom&, const DAtom&) = default;
    friend std::strong_ordering operator<=>(const DAtom& a, const DAtom& b) {
        if (auto c = a.shift <=> b.shift; c != 0) return c;
        return a.module <=> b.module;
    }
};

inline DAtom shifted(const DAtom& a, int k) { return {a.module, a.shift + k}; }

inline std::string name(const DAtom& a, bool with_shift = true) {
    std::string s = name(a.module);
    if (with_shift) s += "@" + std::to_string(a.shift);
    return s;
}

// Finite direct sum of atoms, kept sorted.
using DObj = std::vector<DAtom>;

inline void normalize(DObj& x) { std::sort(x.begin(), x.end()); }

inline std::string name(const DObj& x, bool with_shift = true) {
    if (x.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " + " : "") + name(x[i], with_shift);
    return s;
}

using AtomPred = std::function<bool(const DAtom&)>;

// Hom and Ext^1 between all interval modules.
class HomTable {
public:
    HomTable() = default;
    explicit HomTable(const Quiver& q) : indecs_(all_indecomposables(q)) {
        const std::size_t k = indecs_.size();
        std::vector<Rep> reps;
        for (const auto& m : indecs_) reps.push_back(realize(q, m));
        hom_.assign(k, std::vector<std::size_t>(k, 0));
        ext_ = hom_;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                hom_[i][j] = hom_dim(q, reps[i], reps[j]);
                long long e = static_cast<long long>(hom_[i][j]) - euler_form(q, reps[i].dims, reps[j].dims);
                ext_[i][j] = static_cast<std::size_t>(e);
            }
        for (std::size_t i = 0; i < k; ++i) index_[indecs_[i]] = i;
    }

    const std::vector<IndecId>& indecs() const { return indecs_; }
    std::size_t index(const IndecId& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) throw ContractError("unknown indecomposable " + name(m));
        return it->second;
    }
    std::size_t hom(const IndecId& a, const IndecId& b) const { return hom_[index(a)][index(b)]; }
    std::size_t ext(const IndecId& a, const IndecId& b) const { return ext_[index(a)][index(b)]; }

private:
    std::vector<IndecId> indecs_;
    std::map<IndecId, std::size_t> index_;
    std::vector<std::vector<std::size_t>> hom_, ext_;
};

struct ChainComplex {
    Quiver quiver;
    int lo = 0;  // degree of terms[0]
    std::vector<Rep> terms;
    std::vector<Intertwiner> diffs;  // diffs[i] : terms[i] -> terms[i+1]

    bool empty() const { return terms.empty(); }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }

    Rep term(int d) const {
        if (empty() || d < lo || d > hi()) return zero_rep(quiver);
        return terms[d - lo];
    }
    Intertwiner diff(int d) const {
        if (empty() || d < lo || d + 1 > hi()) return zero_map(quiver, term(d), term(d + 1));
        return diffs[d - lo];
    }
};

inline ChainComplex shift_degrees(ChainComplex c, int k) {
    c.lo += k;
    return c;
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    ChainComplex out{a.quiver, std::min(a.lo, b.lo), {}, {}};
    const int hi = std::max(a.hi(), b.hi());
    for (int d = out.lo; d <= hi; ++d) out.terms.push_back(direct_sum(a.term(d), b.term(d)));
    for (int d = out.lo; d < hi; ++d) {
        Intertwiner f;
        auto da = a.diff(d), db = b.diff(d);
        for (std::size_t v = 0; v < da.size(); ++v) f.push_back(direct_sum(da[v], db[v]));
        out.diffs.push_back(f);
    }
    return out;
}

// Degree-wise components; missing degrees are zero.
struct ChainMap {
    std::map<int, Intertwiner> comps;
};

inline Intertwiner component(const ChainMap& f, int d, const ChainComplex& c, const ChainComplex& t) {
    auto it = f.comps.find(d);
    if (it != f.comps.end()) return it->second;
    return zero_map(c.quiver, c.term(d), t.term(d));
}

inline ChainMap shift_degrees(const ChainMap& f, int k) {
    ChainMap out;
    for (const auto& [d, m] : f.comps) out.comps[d + k] = m;
    return out;
}

inline bool is_chain_map(const ChainComplex& c, const ChainComplex& t, const ChainMap& f) {
    if (c.empty() || t.empty()) return true;
    const Quiver& q = c.quiver;
    for (const auto& [d, m] : f.comps)
        if (!is_intertwiner(q, c.term(d), t.term(d), m)) return false;
    const int lo = std::min(c.lo, t.lo) - 1, hi = std::max(c.hi(), t.hi());
    for (int d = lo; d <= hi; ++d) {
        auto lhs = compose(t.diff(d), component(f, d, c, t));
        auto rhs = compose(component(f, d + 1, c, t), c.diff(d));
        for (std::size_t v = 0; v < lhs.size(); ++v)
            if (!(lhs[v] == rhs[v])) return false;
    }
    return true;
}

// Two-term projective resolution P1 -> P0 of x, with P0 in degree 0.
inline ChainComplex resolution(const Quiver& q, const Rep& x) {
    const int nv = q.vertex_count();
    auto cover = [&](const Rep& target, Rep& proj, Intertwiner& eps) {
        std::vector<IndecId> parts;
        eps.clear();
        for (int w = 0; w < nv; ++w) eps.emplace_back(target.dims[w], 0, q.prime());
        for (const auto& [v, elem] : top_elements(q, target)) {
            parts.push_back(projective_indec(q, v));
            auto g = map_from_projective(q, v, elem, target);
            for (int w = 0; w < nv; ++w) eps[w] = hstack(eps[w], g[w]);
        }
        proj = realize_sum(q, parts);
    };
    Rep p0, p1;
    Intertwiner eps0, eps1;
    cover(x, p0, eps0);
    SubRep k = kernel(q, p0, eps0);
    Rep krep = as_rep(q, k);
    cover(krep, p1, eps1);
    if (p1.total_dim() != krep.total_dim()) throw std::logic_error("resolution: syzygy is not projective");
    Intertwiner d;
    for (int w = 0; w < nv; ++w) d.push_back(k.basis[w] * eps1[w]);
    return ChainComplex{q, -1, {p1, p0}, {d}};
}

inline std::vector<Elem> flatten(const Intertwiner& f) {
    std::vector<Elem> out;
    for (const auto& m : f) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
}

inline Matrix columns_of(const std::vector<std::vector<Elem>>& cols, std::size_t rows, Elem p) {
    Matrix m(rows, cols.size(), p);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    return m;
}

// Chain maps c -> t modulo null-homotopic ones: representatives of a basis of
// Hom in the derived category when both complexes consist of projectives.
inline std::vector<ChainMap> derived_hom_basis(const ChainComplex& c, const ChainComplex& t) {
    if (c.empty() || t.empty()) return {};
    const Quiver& q = c.quiver;
    const Elem p = q.prime();
    const int lo = std::max(c.lo, t.lo), hi = std::min(c.hi(), t.hi());
    if (lo > hi) return {};

    std::map<int, std::vector<Intertwiner>> basis;
    std::map<int, std::size_t> offset;
    std::size_t unknowns = 0;
    for (int d = lo; d <= hi; ++d) {
        basis[d] = hom_basis(q, c.term(d), t.term(d));
        offset[d] = unknowns;
        unknowns += basis[d].size();
    }
    if (unknowns == 0) return {};

    // Chain condition t.diff(d) f^d = f^{d+1} c.diff(d).
    std::vector<std::vector<Elem>> rows_per_unknown(unknowns);
    std::size_t total_rows = 0;
    for (int d = lo - 1; d <= hi; ++d) {
        const Rep src = c.term(d), dst = t.term(d + 1);
        std::size_t len = 0;
        for (std::size_t v = 0; v < src.dims.size(); ++v) len += src.dims[v] * dst.dims[v];
        if (len == 0) continue;
        for (int e : {d, d + 1}) {
            if (!basis.count(e)) continue;
            for (std::size_t j = 0; j < basis[e].size(); ++j) {
                Intertwiner contrib = e == d ? compose(t.diff(d), basis[e][j])
                                             : scale(compose(basis[e][j], c.diff(d)), p - 1);
                auto flat = flatten(contrib);
                auto& col = rows_per_unknown[offset[e] + j];
                col.resize(total_rows, 0);
                col.insert(col.end(), flat.begin(), flat.end());
            }
        }
        total_rows += len;
        for (auto& col : rows_per_unknown) col.resize(total_rows, 0);
    }
    for (auto& col : rows_per_unknown) col.resize(total_rows, 0);
    Matrix constraints = columns_of(rows_per_unknown, total_rows, p);
    Matrix z = nullspace(constraints);

    // Coordinates of a family of degree components in the hom bases.
    auto coords = [&](const std::map<int, Intertwiner>& g) {
        Matrix out(unknowns, 1, p);
        for (const auto& [d, m] : g) {
            if (!basis.count(d) || basis[d].empty()) continue;
            std::vector<std::vector<Elem>> cols;
            for (const auto& b : basis[d]) cols.push_back(flatten(b));
            auto target = flatten(m);
            Matrix bm = columns_of(cols, target.size(), p);
            auto sol = solve(bm, columns_of({target}, target.size(), p));
            if (!sol) throw std::logic_error("derived_hom_basis: homotopy image outside hom basis");
            for (std::size_t j = 0; j < basis[d].size(); ++j)
                out.set(offset[d] + j, 0, static_cast<long long>(out(offset[d] + j, 0)) + (*sol)(j, 0));
        }
        return out;
    };

    Matrix homotopies(unknowns, 0, p);
    for (int d = c.lo; d <= c.hi(); ++d) {
        const Rep src = c.term(d), dst = t.term(d - 1);
        if (src.total_dim() == 0 || dst.total_dim() == 0) continue;
        for (const auto& h : hom_basis(q, src, dst)) {
            std::map<int, Intertwiner> g;
            if (d - 1 >= lo && d - 1 <= hi) g[d - 1] = compose(h, c.diff(d - 1));
            if (d >= lo && d <= hi) g[d] = compose(t.diff(d - 1), h);
            homotopies = hstack(homotopies, coords(g));
        }
    }
    Matrix reps = complement_columns(column_basis(homotopies), z);
    std::vector<ChainMap> out;
    for (std::size_t k = 0; k < reps.cols(); ++k) {
        ChainMap f;
        for (int d = lo; d <= hi; ++d) {
            Intertwiner comp = zero_map(q, c.term(d), t.term(d));
            for (std::size_t j = 0; j < basis[d].size(); ++j) {
                Elem a = reps(offset[d] + j, k);
                if (a) comp = add(comp, scale(basis[d][j], a));
            }
            f.comps[d] = comp;
        }
        out.push_back(std::move(f));
    }
    return out;
}

// Cone^d = C^{d+1} (+) T^d with differential [[-dC, 0], [f, dT]].
inline ChainComplex cone(const ChainComplex& c, const ChainComplex& t, const ChainMap& f) {
    if (c.empty()) return t;
    const Quiver& q = c.quiver;
    const int lo = t.empty() ? c.lo - 1 : std::min(c.lo - 1, t.lo);
    const int hi = t.empty() ? c.hi() - 1 : std::max(c.hi() - 1, t.hi());
    ChainComplex out{q, lo, {}, {}};
    for (int d = lo; d <= hi; ++d) out.terms.push_back(direct_sum(c.term(d + 1), t.term(d)));
    for (int d = lo; d < hi; ++d) {
        Intertwiner m;
        auto dc = c.diff(d + 1), dt = t.diff(d);
        auto fd = component(f, d + 1, c, t);
        Rep a = out.term(d), b = out.term(d + 1);
        for (int v = 0; v < q.vertex_count(); ++v) {
            Matrix blk(b.dims[v], a.dims[v], q.prime());
            blk.set_block(0, 0, dc[v].negated());
            blk.set_block(dc[v].rows(), 0, fd[v]);
            blk.set_block(dc[v].rows(), dc[v].cols(), dt[v]);
            m.push_back(blk);
        }
        out.diffs.push_back(m);
    }
    return out;
}

inline Rep cohomology(const ChainComplex& c, int d) {
    const Quiver& q = c.quiver;
    const Rep here = c.term(d);
    SubRep ker = kernel(q, here, c.diff(d));
    Rep krep = as_rep(q, ker);
    auto in = c.diff(d - 1);
    SubRep im{krep, {}};
    for (int v = 0; v < q.vertex_count(); ++v) {
        auto coords = solve(ker.basis[v], in[v]);
        if (!coords) throw ContractError("cohomology: differentials do not compose to zero");
        im.basis.push_back(column_basis(*coords));
    }
    return quotient(q, im).rep;
}

// Every complex over a hereditary algebra is the sum of its shifted cohomologies.
inline DObj cohomology_atoms(const ChainComplex& c) {
    DObj out;
    if (c.empty()) return out;
    for (int d = c.lo; d <= c.hi(); ++d) {
        Rep h = cohomology(c, d);
        if (h.total_dim() == 0) continue;
        for (const auto& m : decompose(c.quiver, h)) out.push_back({m, -d});
    }
    normalize(out);
    return out;
}

inline DObj cone_decompose(const ChainComplex& c, const ChainComplex& t, const ChainMap& f) {
    if (!is_chain_map(c, t, f)) throw ContractError("cone_decompose: input is not a chain map");
    return cohomology_atoms(cone(c, t, f));
}

// A triangle u -> x -> v -> u[1].
struct TriangleWitness {
    DAtom x;
    DObj u;
    DObj v;
    ChainComplex u_complex;
    ChainComplex x_complex;
    ChainMap map;

    std::string str() const { return name(u) + " -> " + name(x) + " -> " + name(v); }
};

class DerivedCategory {
public:
    explicit DerivedCategory(Quiver q) : q_(std::move(q)), table_(q_) {}

    const Quiver& quiver() const { return q_; }
    const HomTable& table() const { return table_; }
    const std::vector<IndecId>& indecs() const { return table_.indecs(); }

    std::size_t hom_dim_D(const DAtom& a, const DAtom& b) const {
        if (b.shift == a.shift) return table_.hom(a.module, b.module);
        if (b.shift == a.shift + 1) return table_.ext(a.module, b.module);
        return 0;
    }

    ChainComplex atom_complex(const DAtom& a) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = resolutions_.find(a.module);
        if (it == resolutions_.end())
            it = resolutions_.emplace(a.module, resolution(q_, realize(q_, a.module))).first;
        return shift_degrees(it->second, -a.shift);
    }

    ChainComplex complex_of(const DObj& x) const {
        ChainComplex out{q_, 0, {}, {}};
        for (const auto& a : x) out = direct_sum(out, atom_complex(a));
        return out;
    }

    // Derived Hom basis a -> b by the chain-map route.
    std::vector<ChainMap> hom_basis_D(const DAtom& a, const DAtom& b) const {
        const int k = a.shift - b.shift;
        const auto key = std::make_tuple(a.module, k, b.module);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = hom_cache_.find(key); it != hom_cache_.end()) return shifted_maps(it->second, -b.shift);
        }
        auto basis = derived_hom_basis(atom_complex({a.module, k}), atom_complex({b.module, 0}));
        std::lock_guard<std::mutex> lock(mu_);
        hom_cache_.emplace(key, basis);
        return shifted_maps(basis, -b.shift);
    }

    DObj cone_of(const DObj& u, const DAtom& x, const ChainMap& f) const {
        return cone_decompose(complex_of(u), atom_complex(x), f);
    }

    bool recheck(const TriangleWitness& w) const {
        return cone_decompose(w.u_complex, w.x_complex, w.map) == w.v;
    }

    // Decides x in add(U) * add(V). Summands of u live at shifts n-1 and n; each
    // atom enters with a subspace of its Hom space to x (one copy per basis vector).
    std::optional<TriangleWitness> triangle_search(const DAtom& x, const AtomPred& in_u, const AtomPred& in_v) const {
        if (in_v(x)) return TriangleWitness{x, {}, {x}, complex_of({}), atom_complex(x), {}};
        if (in_u(x)) {
            ChainComplex cx = atom_complex(x);
            ChainMap id;
            for (int d = cx.lo; d <= cx.hi(); ++d) id.comps[d] = identity_map(q_, cx.term(d));
            return TriangleWitness{x, {x}, {}, cx, cx, id};
        }
        const int n = x.shift;
        std::string key = name(x.module);
        std::vector<DAtom> cands;
        for (int k : {n - 1, n})
            for (const auto& m : indecs()) {
                DAtom a{m, k};
                if (hom_dim_D(a, x) > 0 && in_u(a)) cands.push_back(a);
            }
        for (int k : {n, n + 1})
            for (const auto& m : indecs()) key += in_v({m, k}) ? '1' : '0';
        for (int k : {n - 1, n})
            for (const auto& m : indecs()) key += in_u({m, k}) ? '1' : '0';
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = search_cache_.find(key); it != search_cache_.end()) {
                if (!it->second) return std::nullopt;
                return shift_witness(*it->second, n);
            }
        }
        auto found = search_at_zero({x.module, 0}, shift_all(cands, -n), [&](const DAtom& a) { return in_v(shifted(a, n)); });
        std::lock_guard<std::mutex> lock(mu_);
        search_cache_.emplace(key, found);
        if (!found) return std::nullopt;
        return shift_witness(*found, n);
    }

    std::size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return search_cache_.size();
    }

private:
    static std::vector<ChainMap> shifted_maps(std::vector<ChainMap> maps, int k) {
        for (auto& f : maps) f = shift_degrees(f, k);
        return maps;
    }

    static DObj shift_all(DObj x, int k) {
        for (auto& a : x) a.shift += k;
        return x;
    }

    static TriangleWitness shift_witness(TriangleWitness w, int n) {
        w.x = shifted(w.x, n);
        w.u = shift_all(w.u, n);
        w.v = shift_all(w.v, n);
        w.u_complex = shift_degrees(w.u_complex, -n);
        w.x_complex = shift_degrees(w.x_complex, -n);
        w.map = shift_degrees(w.map, -n);
        return w;
    }

    std::optional<TriangleWitness> search_at_zero(const DAtom& x, const std::vector<DAtom>& cands,
                                                  const AtomPred& in_v) const {
        const Elem p = q_.prime();
        const ChainComplex cx = atom_complex(x);
        std::vector<std::vector<ChainMap>> bases;
        std::vector<std::vector<Matrix>> options;
        std::size_t max_total = 0;
        for (const auto& a : cands) {
            bases.push_back(hom_basis_D(a, x));
            options.push_back(all_subspaces(bases.back().size(), p));
            max_total += bases.back().size();
        }
        std::vector<std::size_t> choice(cands.size(), 0);
        std::optional<TriangleWitness> result;

        auto attempt = [&]() -> bool {
            DObj u;
            ChainComplex ucx{q_, 0, {}, {}};
            std::vector<std::pair<ChainComplex, ChainMap>> parts;
            for (std::size_t s = 0; s < cands.size(); ++s) {
                const Matrix& w = options[s][choice[s]];
                for (std::size_t col = 0; col < w.cols(); ++col) {
                    ChainComplex ac = atom_complex(cands[s]);
                    ChainMap g;
                    for (int d = ac.lo; d <= ac.hi(); ++d) {
                        Intertwiner comp = zero_map(q_, ac.term(d), cx.term(d));
                        for (std::size_t j = 0; j < bases[s].size(); ++j)
                            if (w(j, col)) comp = add(comp, scale(component(bases[s][j], d, ac, cx), w(j, col)));
                        g.comps[d] = comp;
                    }
                    u.push_back(cands[s]);
                    parts.push_back({ac, g});
                    ucx = direct_sum(ucx, ac);
                }
            }
            // Assemble the map out of the direct sum, summand by summand in order.
            ChainMap f;
            for (int d = ucx.lo; d <= ucx.hi(); ++d) {
                Intertwiner comp;
                for (int v = 0; v < q_.vertex_count(); ++v) comp.emplace_back(cx.term(d).dims[v], 0, p);
                for (const auto& [ac, g] : parts) {
                    auto gd = component(g, d, ac, cx);
                    for (int v = 0; v < q_.vertex_count(); ++v) comp[v] = hstack(comp[v], gd[v]);
                }
                f.comps[d] = comp;
            }
            DObj v = cone_decompose(ucx, cx, f);
            if (!std::all_of(v.begin(), v.end(), in_v)) return false;
            DObj us = u;
            normalize(us);
            result = TriangleWitness{x, us, v, ucx, cx, f};
            return true;
        };

        std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t remaining) -> bool {
            if (slot == cands.size()) return remaining == 0 && attempt();
            for (std::size_t o = 0; o < options[slot].size(); ++o) {
                std::size_t k = options[slot][o].cols();
                if (k > remaining) continue;
                choice[slot] = o;
                if (rec(slot + 1, remaining - k)) return true;
            }
            choice[slot] = 0;
            return false;
        };
        for (std::size_t total = 1; total <= max_total; ++total)
            if (rec(0, total)) return result;
        return std::nullopt;
    }

    Quiver q_;
    HomTable table_;
    mutable std::mutex mu_;
    mutable std::map<IndecId, ChainComplex> resolutions_;
    mutable std::map<std::tuple<IndecId, int, IndecId>, std::vector<ChainMap>> hom_cache_;
    mutable std::map<std::string, std::optional<TriangleWitness>> search_cache_;
};

// Atom-level star product of two finite atom sets: indecomposables X admitting
// a triangle a -> X -> b -> a[1] with a in add A, b in add B.
inline std::vector<DAtom> star(const DerivedCategory& dc, const std::vector<DAtom>& a, const std::vector<DAtom>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::set<DAtom> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    int lo = std::min(sa.begin()->shift, sb.begin()->shift) - 1;
    int hi = std::max(sa.rbegin()->shift, sb.rbegin()->shift) + 1;
    std::vector<DAtom> out;
    for (int s = lo; s <= hi; ++s)
        for (const auto& m : dc.indecs()) {
            DAtom x{m, s};
            if (dc.triangle_search(x, [&](const DAtom& t) { return sa.count(t) > 0; },
                                   [&](const DAtom& t) { return sb.count(t) > 0; }))
                out.push_back(x);
        }
    return out;
}

inline std::vector<DAtom> shift_atoms(std::vector<DAtom> x, int k) {
    for (auto& a : x) a.shift += k;
    return x;
}

struct Window {
    int lo = -1;
    int hi = 1;

    bool contains(int shift) const { return lo <= shift && shift <= hi; }
    std::vector<DAtom> atoms(const std::vector<IndecId>& indecs) const {
        std::vector<DAtom> out;
        for (int s = lo; s <= hi; ++s)
            for (const auto& m : indecs) out.push_back({m, s});
        return out;
    }
    friend bool operator==(const Window&, const Window&) = default;
};

enum class AtomClass { Torsion, Free, Neither };

// Torsion pair presented on a window: atoms above the window are torsion, below are free.
struct WindowPair {
    Window window;
    std::map<DAtom, AtomClass> cls;

    AtomClass classify(const DAtom& a) const {
        if (a.shift > window.hi) return AtomClass::Torsion;
        if (a.shift < window.lo) return AtomClass::Free;
        auto it = cls.find(a);
        return it == cls.end() ? AtomClass::Neither : it->second;
    }
    bool torsion(const DAtom& a) const { return classify(a) == AtomClass::Torsion; }
    bool free(const DAtom& a) const { return classify(a) == AtomClass::Free; }

    static WindowPair from_sets(Window w, const std::vector<DAtom>& torsion, const std::vector<DAtom>& free_atoms) {
        WindowPair p{w, {}};
        for (const auto& a : torsion) p.cls[a] = AtomClass::Torsion;
        for (const auto& a : free_atoms) {
            if (p.cls.count(a)) throw DomainError("atom " + name(a) + " is classified both torsion and free");
            p.cls[a] = AtomClass::Free;
        }
        return p;
    }
};

inline void check_buffer(const DerivedCategory& dc, const WindowPair& p) {
    if (p.window.lo >= p.window.hi) throw DomainError("window must satisfy lo < hi");
    for (const auto& [a, c] : p.cls)
        if (!p.window.contains(a.shift)) throw DomainError("atom outside the window: " + name(a), name(a));
    for (const auto& m : dc.indecs()) {
        DAtom top{m, p.window.hi}, bottom{m, p.window.lo};
        if (!p.torsion(top))
            throw DomainError("buffer invariant violated: " + name(top) + " must be torsion", name(top));
        if (!p.free(bottom))
            throw DomainError("buffer invariant violated: " + name(bottom) + " must be free", name(bottom));
    }
}

struct TorsionReport {
    bool tp1 = false;
    bool tp2 = false;
    std::string tp1_witness;
    std::string tp2_witness;
    std::optional<bool> s_torsion;
    std::string s_witness;
    std::optional<bool> t_structure;
    std::vector<TriangleWitness> factorizations;

    bool is_torsion() const { return tp1 && tp2; }
};

inline TorsionReport is_torsion_pair_D(const DerivedCategory& dc, const WindowPair& p, bool s_flag, bool t_flag) {
    check_buffer(dc, p);
    TorsionReport r;
    const auto atoms = p.window.atoms(dc.indecs());
    r.tp1 = true;
    for (const auto& u : atoms) {
        if (!p.torsion(u)) continue;
        for (const auto& v : atoms)
            if (p.free(v) && dc.hom_dim_D(u, v) > 0) {
                r.tp1 = false;
                r.tp1_witness = "Hom(" + name(u) + ", " + name(v) + ") != 0";
                break;
            }
        if (!r.tp1) break;
    }
    r.tp2 = true;
    for (const auto& x : atoms) {
        auto w = dc.triangle_search(x, [&](const DAtom& a) { return p.torsion(a); },
                                    [&](const DAtom& a) { return p.free(a); });
        if (!w) {
            r.tp2 = false;
            r.tp2_witness = name(x) + " admits no triangle";
            break;
        }
        r.factorizations.push_back(*w);
    }
    if (s_flag || t_flag) {
        bool s = true;
        for (const auto& u : atoms) {
            if (!p.torsion(u)) continue;
            for (const auto& v : atoms)
                if (p.free(v) && dc.hom_dim_D(u, shifted(v, -1)) > 0) {
                    s = false;
                    r.s_witness = "Hom(" + name(u) + ", " + name(shifted(v, -1)) + ") != 0";
                    break;
                }
            if (!s) break;
        }
        s = s && r.is_torsion();
        if (s_flag) r.s_torsion = s;
        if (t_flag) r.t_structure = s;
    }
    return r;
}

struct Truncation {
    DObj below;  // tau_{<=n} X
    DObj above;  // tau_{>=n+1} X
};

// Truncation for the t-structure (U, V[1]) encoded by an s-torsion window pair.
inline Truncation truncate(const DerivedCategory& dc, const WindowPair& t, const DObj& x, int n) {
    Truncation out;
    for (const auto& a : x) {
        DAtom y = shifted(a, n);
        if (!t.window.contains(y.shift) && y.shift > t.window.hi) {
            out.below.push_back(a);
            continue;
        }
        if (y.shift < t.window.lo) {
            out.above.push_back(a);
            continue;
        }
        auto w = dc.triangle_search(y, [&](const DAtom& b) { return t.torsion(b); },
                                    [&](const DAtom& b) { return t.free(b); });
        if (!w) throw DomainError("truncate: " + name(y) + " has no decomposition; pair is not a torsion pair");
        for (const auto& b : w->u) out.below.push_back(shifted(b, -n));
        for (const auto& b : w->v) out.above.push_back(shifted(b, -n));
    }
    normalize(out.below);
    normalize(out.above);
    return out;
}

}  // namespace tilt
