#pragma once

// Type-A quivers, their representations over F_p, and the module-category
// operations built on top: Hom/Ext, traces, Krull-Schmidt decomposition and
// Serre-closure tests.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tilt/errors.hpp"
#include "tilt/exactlin.hpp"

namespace tilt {

// Vertices are 0-based internally; IndecId and all text use 1-based labels.
struct Arrow {
    int source;
    int target;
};

class Quiver {
public:
    Quiver() = default;
    // rightward[k] is true when the edge between vertices k+1 and k+2 points k+1 -> k+2.
    explicit Quiver(std::vector<bool> rightward, Elem prime = 2) : rightward_(std::move(rightward)), prime_(prime) {
        if (!is_prime(prime_)) throw std::invalid_argument("Quiver: field size must be prime");
        for (std::size_t k = 0; k < rightward_.size(); ++k) {
            int a = static_cast<int>(k), b = a + 1;
            arrows_.push_back(rightward_[k] ? Arrow{a, b} : Arrow{b, a});
        }
    }

    int vertex_count() const { return static_cast<int>(rightward_.size()) + 1; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    bool points_right(std::size_t edge) const { return rightward_[edge]; }
    Elem prime() const { return prime_; }
    Quiver with_prime(Elem p) const { return Quiver(rightward_, p); }

    std::string spec() const {
        std::string s = "1";
        for (std::size_t k = 0; k < rightward_.size(); ++k) {
            s += rightward_[k] ? '>' : '<';
            s += std::to_string(k + 2);
        }
        return s;
    }

    bool operator==(const Quiver& o) const { return rightward_ == o.rightward_ && prime_ == o.prime_; }

private:
    std::vector<bool> rightward_;
    std::vector<Arrow> arrows_;
    Elem prime_ = 2;
};

inline Quiver parse_quiver(std::string_view text, Elem prime = 2) {
    std::vector<bool> dirs;
    std::size_t i = 0;
    int expected = 1;
    auto read_vertex = [&]() {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) {
            std::string tok = i < text.size() ? std::string(1, text[i]) : std::string("<end>");
            throw ParseError("quiver spec: expected vertex at position " + std::to_string(start) + ", got '" + tok + "'");
        }
        std::string tok(text.substr(start, i - start));
        if (std::stoi(tok) != expected)
            throw ParseError("quiver spec: vertex '" + tok + "' is out of sequence (expected " +
                             std::to_string(expected) + ")");
        ++expected;
    };
    if (text.empty()) throw ParseError("quiver spec: empty");
    read_vertex();
    while (i < text.size()) {
        char c = text[i];
        if (c != '<' && c != '>') throw ParseError(std::string("quiver spec: unexpected token '") + c + "'");
        dirs.push_back(c == '>');
        ++i;
        read_vertex();
    }
    return Quiver(std::move(dirs), prime);
}

inline std::vector<Quiver> all_orientations(int n, Elem prime = 2) {
    std::vector<Quiver> out;
    const int edges = n - 1;
    for (unsigned mask = 0; mask < (1u << edges); ++mask) {
        std::vector<bool> dirs(edges);
        for (int k = 0; k < edges; ++k) dirs[k] = !((mask >> k) & 1u);
        out.emplace_back(dirs, prime);
    }
    return out;
}

// The interval module M[lo,hi].
struct IndecId {
    int lo = 1;
    int hi = 1;
    int length() const { return hi - lo + 1; }
    bool contains(int vertex1) const { return lo <= vertex1 && vertex1 <= hi; }
    auto operator<=>(const IndecId&) const = default;
};

inline std::string name(const IndecId& m) { return "M[" + std::to_string(m.lo) + "," + std::to_string(m.hi) + "]"; }

inline std::vector<IndecId> all_indecomposables(const Quiver& q) {
    std::vector<IndecId> out;
    const int n = q.vertex_count();
    for (int lo = 1; lo <= n; ++lo)
        for (int hi = lo; hi <= n; ++hi) out.push_back({lo, hi});
    return out;
}

// Composition-series style name: socle layers listed top to bottom, "/" separated.
// On 1>2<3<4 this gives "4/1 3/2" for M[1,4].
inline std::string socle_alias(const Quiver& q, const IndecId& m) {
    const auto& arrows = q.arrows();
    std::map<int, int> depth;  // distance above the socle
    std::function<int(int)> height = [&](int v) -> int {
        if (auto it = depth.find(v); it != depth.end()) return it->second;
        int h = 0;
        for (const auto& a : arrows)
            if (a.source == v && m.contains(a.target + 1)) h = std::max(h, height(a.target) + 1);
        depth[v] = h;
        return h;
    };
    int top = 0;
    for (int v = m.lo - 1; v <= m.hi - 1; ++v) top = std::max(top, height(v));
    std::string out;
    for (int layer = top; layer >= 0; --layer) {
        if (layer != top) out += '/';
        bool first = true;
        for (int v = m.lo - 1; v <= m.hi - 1; ++v)
            if (depth[v] == layer) {
                if (!first) out += ' ';
                out += std::to_string(v + 1);
                first = false;
            }
    }
    return out;
}

// Per-vertex linear maps between two representations.
using Intertwiner = std::vector<Matrix>;

struct Rep {
    std::vector<std::size_t> dims;  // per vertex
    std::vector<Matrix> maps;       // per arrow, target dim x source dim

    std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
};

inline Rep zero_rep(const Quiver& q) {
    Rep r;
    r.dims.assign(q.vertex_count(), 0);
    for (std::size_t a = 0; a < q.arrows().size(); ++a) r.maps.emplace_back(0, 0, q.prime());
    return r;
}

inline Rep realize(const Quiver& q, const IndecId& m) {
    Rep r;
    for (int v = 0; v < q.vertex_count(); ++v) r.dims.push_back(m.contains(v + 1) ? 1 : 0);
    for (const auto& a : q.arrows()) {
        std::size_t s = r.dims[a.source], t = r.dims[a.target];
        Matrix mat(t, s, q.prime());
        if (s && t) mat.set(0, 0, 1);
        r.maps.push_back(mat);
    }
    return r;
}

inline Rep direct_sum(const Rep& a, const Rep& b) {
    Rep r;
    for (std::size_t v = 0; v < a.dims.size(); ++v) r.dims.push_back(a.dims[v] + b.dims[v]);
    for (std::size_t k = 0; k < a.maps.size(); ++k) r.maps.push_back(direct_sum(a.maps[k], b.maps[k]));
    return r;
}

inline Rep realize_sum(const Quiver& q, const std::vector<IndecId>& parts) {
    Rep r = zero_rep(q);
    for (const auto& m : parts) r = direct_sum(r, realize(q, m));
    return r;
}

inline void check_rep(const Quiver& q, const Rep& r) {
    if (r.dims.size() != static_cast<std::size_t>(q.vertex_count()) || r.maps.size() != q.arrows().size())
        throw ContractError("Rep does not match the quiver's shape");
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        if (r.maps[k].rows() != r.dims[a.target] || r.maps[k].cols() != r.dims[a.source])
            throw ContractError("Rep: arrow matrix " + std::to_string(k) + " has the wrong shape");
    }
}

inline Intertwiner zero_map(const Quiver& q, const Rep& from, const Rep& to) {
    Intertwiner f;
    for (int v = 0; v < q.vertex_count(); ++v) f.emplace_back(to.dims[v], from.dims[v], q.prime());
    return f;
}

inline Intertwiner identity_map(const Quiver& q, const Rep& x) {
    Intertwiner f;
    for (int v = 0; v < q.vertex_count(); ++v) f.push_back(Matrix::identity(x.dims[v], q.prime()));
    return f;
}

inline Intertwiner compose(const Intertwiner& g, const Intertwiner& f) {
    Intertwiner out;
    for (std::size_t v = 0; v < f.size(); ++v) out.push_back(g[v] * f[v]);
    return out;
}

inline Intertwiner add(const Intertwiner& f, const Intertwiner& g) {
    Intertwiner out;
    for (std::size_t v = 0; v < f.size(); ++v) out.push_back(f[v] + g[v]);
    return out;
}

inline Intertwiner scale(const Intertwiner& f, Elem c) {
    Intertwiner out;
    for (const auto& m : f) out.push_back(m.scaled(c));
    return out;
}

inline bool is_zero(const Intertwiner& f) {
    return std::all_of(f.begin(), f.end(), [](const Matrix& m) { return m.is_zero(); });
}

inline bool is_intertwiner(const Quiver& q, const Rep& from, const Rep& to, const Intertwiner& f) {
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        if (!(f[a.target] * from.maps[k] == to.maps[k] * f[a.source])) return false;
    }
    return true;
}

// Basis of Hom(M, N): families (phi_v) with phi_t M_a = N_a phi_s for each arrow a: s -> t.
inline std::vector<Intertwiner> hom_basis(const Quiver& q, const Rep& m, const Rep& n) {
    const Elem p = q.prime();
    const int nv = q.vertex_count();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    const std::size_t unknowns = offset[nv];

    std::size_t eqs = 0;
    for (const auto& a : q.arrows()) eqs += n.dims[a.target] * m.dims[a.source];
    Matrix sys(eqs, unknowns, p);
    std::size_t row = 0;
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        const std::size_t s = a.source, t = a.target;
        const Matrix& ma = m.maps[k];
        const Matrix& na = n.maps[k];
        for (std::size_t i = 0; i < n.dims[t]; ++i)
            for (std::size_t j = 0; j < m.dims[s]; ++j, ++row) {
                // (phi_t M_a)[i][j] = sum_l phi_t[i][l] M_a[l][j]
                for (std::size_t l = 0; l < m.dims[t]; ++l)
                    if (ma(l, j)) {
                        std::size_t col = offset[t] + i * m.dims[t] + l;
                        sys.set(row, col, static_cast<long long>(sys(row, col)) + ma(l, j));
                    }
                // - (N_a phi_s)[i][j] = - sum_l N_a[i][l] phi_s[l][j]
                for (std::size_t l = 0; l < n.dims[s]; ++l)
                    if (na(i, l)) {
                        std::size_t col = offset[s] + l * m.dims[s] + j;
                        sys.set(row, col, static_cast<long long>(sys(row, col)) - na(i, l));
                    }
            }
    }
    Matrix ns = nullspace(sys);
    std::vector<Intertwiner> basis;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        Intertwiner f;
        for (int v = 0; v < nv; ++v) {
            Matrix fv(n.dims[v], m.dims[v], p);
            for (std::size_t i = 0; i < n.dims[v]; ++i)
                for (std::size_t j = 0; j < m.dims[v]; ++j) fv.set(i, j, ns(offset[v] + i * m.dims[v] + j, c));
            f.push_back(fv);
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

inline std::size_t hom_dim(const Quiver& q, const Rep& m, const Rep& n) { return hom_basis(q, m, n).size(); }

// <d, e> = sum_v d_v e_v - sum_{a: s->t} d_s e_t
inline long long euler_form(const Quiver& q, const std::vector<std::size_t>& d, const std::vector<std::size_t>& e) {
    long long sum = 0;
    for (std::size_t v = 0; v < d.size(); ++v) sum += static_cast<long long>(d[v] * e[v]);
    for (const auto& a : q.arrows()) sum -= static_cast<long long>(d[a.source] * e[a.target]);
    return sum;
}

// dim Ext^1(M, N), through the Euler form (kQ is hereditary).
inline std::size_t ext1_dim(const Quiver& q, const Rep& m, const Rep& n) {
    long long e = static_cast<long long>(hom_dim(q, m, n)) - euler_form(q, m.dims, n.dims);
    return static_cast<std::size_t>(e);
}

// Ext^1(X, Y) realized by cocycles: families c_a : X_s -> Y_t modulo
// coboundaries c_a = Y_a h_s - h_t X_a.
struct ExtensionSpace {
    std::vector<std::vector<Matrix>> basis;  // representatives, one matrix per arrow
    std::size_t dim() const { return basis.size(); }
};

inline ExtensionSpace extension_space(const Quiver& q, const Rep& x, const Rep& y) {
    const Elem p = q.prime();
    const int nv = q.vertex_count();
    const auto& arrows = q.arrows();
    std::vector<std::size_t> aoff(arrows.size() + 1, 0);
    for (std::size_t k = 0; k < arrows.size(); ++k)
        aoff[k + 1] = aoff[k] + y.dims[arrows[k].target] * x.dims[arrows[k].source];
    std::vector<std::size_t> voff(nv + 1, 0);
    for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + y.dims[v] * x.dims[v];

    // Coboundary operator: h (all vertices) -> c (all arrows).
    Matrix delta(aoff.back(), voff.back(), p);
    for (std::size_t k = 0; k < arrows.size(); ++k) {
        const std::size_t s = arrows[k].source, t = arrows[k].target;
        for (std::size_t i = 0; i < y.dims[t]; ++i)
            for (std::size_t j = 0; j < x.dims[s]; ++j) {
                std::size_t row = aoff[k] + i * x.dims[s] + j;
                for (std::size_t l = 0; l < y.dims[s]; ++l)  // (Y_a h_s)[i][j]
                    if (y.maps[k](i, l)) {
                        std::size_t col = voff[s] + l * x.dims[s] + j;
                        delta.set(row, col, static_cast<long long>(delta(row, col)) + y.maps[k](i, l));
                    }
                for (std::size_t l = 0; l < x.dims[t]; ++l)  // -(h_t X_a)[i][j]
                    if (x.maps[k](l, j)) {
                        std::size_t col = voff[t] + i * x.dims[t] + l;
                        delta.set(row, col, static_cast<long long>(delta(row, col)) - x.maps[k](l, j));
                    }
            }
    }
    Matrix image = column_basis(delta);
    Matrix reps = complement_columns(image, Matrix::identity(aoff.back(), p));
    ExtensionSpace ext;
    for (std::size_t c = 0; c < reps.cols(); ++c) {
        std::vector<Matrix> cocycle;
        for (std::size_t k = 0; k < arrows.size(); ++k) {
            const std::size_t s = arrows[k].source, t = arrows[k].target;
            Matrix ca(y.dims[t], x.dims[s], p);
            for (std::size_t i = 0; i < y.dims[t]; ++i)
                for (std::size_t j = 0; j < x.dims[s]; ++j) ca.set(i, j, reps(aoff[k] + i * x.dims[s] + j, c));
            cocycle.push_back(ca);
        }
        ext.basis.push_back(std::move(cocycle));
    }
    return ext;
}

// Middle term E of 0 -> Y -> E -> X -> 0 for the given cocycle; E_v = Y_v (+) X_v.
inline Rep middle_term(const Quiver& q, const Rep& x, const Rep& y, const std::vector<Matrix>& cocycle) {
    Rep e;
    for (std::size_t v = 0; v < x.dims.size(); ++v) e.dims.push_back(y.dims[v] + x.dims[v]);
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        Matrix m(e.dims[a.target], e.dims[a.source], q.prime());
        m.set_block(0, 0, y.maps[k]);
        m.set_block(0, y.dims[a.source], cocycle[k]);
        m.set_block(y.dims[a.target], y.dims[a.source], x.maps[k]);
        e.maps.push_back(m);
    }
    return e;
}

// A subrepresentation, given by a basis of the subspace at each vertex.
struct SubRep {
    Rep parent;
    std::vector<Matrix> basis;  // per vertex: parent dim x sub dim, independent columns

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& b : basis) d.push_back(b.cols());
        return d;
    }
};

inline bool is_closed(const Quiver& q, const SubRep& s) {
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        Matrix img = s.parent.maps[k] * s.basis[a.source];
        if (rank(hstack(s.basis[a.target], img)) != s.basis[a.target].cols()) return false;
    }
    return true;
}

inline Rep as_rep(const Quiver& q, const SubRep& s) {
    Rep r;
    r.dims = s.dims();
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        auto coords = solve(s.basis[a.target], s.parent.maps[k] * s.basis[a.source]);
        if (!coords) throw ContractError("SubRep is not closed under the structure maps");
        r.maps.push_back(*coords);
    }
    return r;
}

struct Quotient {
    Rep rep;
    std::vector<Matrix> complement;  // per vertex: lifts of the quotient basis into the parent
};

inline Quotient quotient(const Quiver& q, const SubRep& s) {
    Quotient out;
    const Elem p = q.prime();
    for (std::size_t v = 0; v < s.basis.size(); ++v) {
        Matrix c = complement_columns(s.basis[v], Matrix::identity(s.parent.dims[v], p));
        out.complement.push_back(c);
        out.rep.dims.push_back(c.cols());
    }
    for (std::size_t k = 0; k < q.arrows().size(); ++k) {
        const auto& a = q.arrows()[k];
        const std::size_t t = a.target, s0 = a.source;
        Matrix full = hstack(s.basis[t], out.complement[t]);
        auto coords = solve(full, s.parent.maps[k] * out.complement[s0]);
        out.rep.maps.push_back(coords->block(s.basis[t].cols(), 0, out.complement[t].cols(), coords->cols()));
    }
    return out;
}

inline SubRep kernel(const Quiver& q, const Rep& x, const Intertwiner& f) {
    SubRep s{x, {}};
    for (int v = 0; v < q.vertex_count(); ++v) s.basis.push_back(nullspace(f[v]));
    return s;
}

inline SubRep image(const Quiver& q, const Rep& target, const Intertwiner& f) {
    SubRep s{target, {}};
    for (int v = 0; v < q.vertex_count(); ++v) s.basis.push_back(column_basis(f[v]));
    return s;
}

struct TraceQuotient {
    SubRep trace;
    Rep quotient;
};

// Sum of the images of all maps from objects of `s` into x.
inline SubRep trace(const Quiver& q, const std::vector<IndecId>& s, const Rep& x) {
    const Elem p = q.prime();
    std::vector<Matrix> span;
    for (int v = 0; v < q.vertex_count(); ++v) span.emplace_back(x.dims[v], 0, p);
    for (const auto& m : s)
        for (const auto& f : hom_basis(q, realize(q, m), x))
            for (int v = 0; v < q.vertex_count(); ++v) span[v] = hstack(span[v], f[v]);
    SubRep t{x, {}};
    for (auto& sp : span) t.basis.push_back(column_basis(sp));
    return t;
}

inline TraceQuotient trace_quotient(const Quiver& q, const std::vector<IndecId>& s, const Rep& x) {
    SubRep t = trace(q, s, x);
    Rep quo = quotient(q, t).rep;
    return {std::move(t), std::move(quo)};
}

// Krull-Schmidt decomposition. Intervals are tried in decreasing length; I splits
// off X whenever g f != 0 for basis maps f: I -> X, g: X -> I, since End(I) = k.
inline std::vector<IndecId> decompose(const Quiver& q, const Rep& x) {
    std::vector<IndecId> order = all_indecomposables(q);
    std::stable_sort(order.begin(), order.end(),
                     [](const IndecId& a, const IndecId& b) { return a.length() > b.length(); });
    std::vector<IndecId> parts;
    Rep cur = x;
    while (cur.total_dim() > 0) {
        bool split = false;
        for (const auto& ind : order) {
            bool fits = true;
            for (int v = ind.lo - 1; v < ind.hi; ++v)
                if (cur.dims[v] == 0) fits = false;
            if (!fits) continue;
            Rep ri = realize(q, ind);
            auto fs = hom_basis(q, ri, cur);
            if (fs.empty()) continue;
            auto gs = hom_basis(q, cur, ri);
            for (const auto& g : gs) {
                for (const auto& f : fs) {
                    if (!(g[ind.lo - 1] * f[ind.lo - 1]).is_zero()) {
                        parts.push_back(ind);
                        cur = as_rep(q, kernel(q, cur, g));
                        split = true;
                        break;
                    }
                }
                if (split) break;
            }
            if (split) break;
        }
        if (!split) throw std::logic_error("decompose: no interval summand found");
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

template <typename Pred>
bool in_add_if(const Quiver& q, const Rep& x, Pred&& member) {
    for (const auto& part : decompose(q, x))
        if (!member(part)) return false;
    return true;
}

inline bool in_add(const Quiver& q, const Rep& x, const std::set<IndecId>& s) {
    return in_add_if(q, x, [&](const IndecId& m) { return s.count(m) > 0; });
}

// add S closed under subobjects, quotients and extensions. Subobjects and quotients
// come from images, cokernels and kernels of the basis maps between indecomposables;
// extensions from the middle terms of basis cocycles between members of S.
inline bool serre_check(const Quiver& q, const std::set<IndecId>& s) {
    const auto indecs = all_indecomposables(q);
    auto all_in = [&](const Rep& r) { return in_add(q, r, s); };
    for (const auto& xm : s) {
        Rep x = realize(q, xm);
        for (const auto& ym : indecs) {
            Rep y = realize(q, ym);
            auto maps = hom_basis(q, y, x);
            for (const auto& f : maps) {
                SubRep im = image(q, x, f);
                if (!all_in(as_rep(q, im))) return false;
                if (!all_in(quotient(q, im).rep)) return false;
                if (s.count(ym) && !all_in(as_rep(q, kernel(q, y, f)))) return false;
            }
            if (!maps.empty() && !all_in(trace_quotient(q, {ym}, x).quotient)) return false;
        }
    }
    for (const auto& am : s)
        for (const auto& bm : s) {
            Rep a = realize(q, am), b = realize(q, bm);
            for (const auto& c : extension_space(q, a, b).basis)
                if (!all_in(middle_term(q, a, b, c))) return false;
        }
    return true;
}

// All subspaces of F_p^d, each as a matrix of independent columns (enumerated via rref forms).
inline std::vector<Matrix> all_subspaces(std::size_t d, Elem p) {
    std::vector<Matrix> out;
    for (std::size_t k = 0; k <= d; ++k) {
        // choose pivot positions
        std::vector<std::size_t> piv(k);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t from) {
            if (idx == k) {
                // free entries: rows below... in column-form rref, column c has 1 at piv[c], zeros at
                // other pivots and before piv[c]; entries at non-pivot rows after piv[c] are free.
                std::vector<std::pair<std::size_t, std::size_t>> free;
                for (std::size_t c = 0; c < k; ++c)
                    for (std::size_t r = piv[c] + 1; r < d; ++r)
                        if (std::find(piv.begin(), piv.end(), r) == piv.end()) free.push_back({r, c});
                std::size_t combos = 1;
                for (std::size_t i = 0; i < free.size(); ++i) combos *= p;
                for (std::size_t code = 0; code < combos; ++code) {
                    Matrix m(d, k, p);
                    for (std::size_t c = 0; c < k; ++c) m.set(piv[c], c, 1);
                    std::size_t rest = code;
                    for (auto [r, c] : free) {
                        m.set(r, c, static_cast<long long>(rest % p));
                        rest /= p;
                    }
                    out.push_back(m);
                }
                return;
            }
            for (std::size_t r = from; r < d; ++r) {
                piv[idx] = r;
                choose(idx + 1, r + 1);
            }
        };
        choose(0, 0);
    }
    return out;
}

// Every subrepresentation of x, by exhaustive subspace enumeration.
inline std::vector<SubRep> all_subreps(const Quiver& q, const Rep& x, std::size_t dim_cap = 12) {
    if (x.total_dim() > dim_cap)
        throw DomainError("subrepresentation enumeration refused: total dimension " + std::to_string(x.total_dim()) +
                          " exceeds cap " + std::to_string(dim_cap));
    const int nv = q.vertex_count();
    std::vector<std::vector<Matrix>> choices;
    for (int v = 0; v < nv; ++v) choices.push_back(all_subspaces(x.dims[v], q.prime()));
    std::vector<SubRep> out;
    SubRep cur{x, std::vector<Matrix>(nv)};
    std::function<void(int)> rec = [&](int v) {
        if (v == nv) {
            out.push_back(cur);
            return;
        }
        for (const auto& b : choices[v]) {
            cur.basis[v] = b;
            bool ok = true;
            // arrows between v and already-fixed vertices
            for (std::size_t k = 0; k < q.arrows().size() && ok; ++k) {
                const auto& a = q.arrows()[k];
                if (std::max(a.source, a.target) != v) continue;
                Matrix img = x.maps[k] * cur.basis[a.source];
                ok = rank(hstack(cur.basis[a.target], img)) == cur.basis[a.target].cols();
            }
            if (ok) rec(v + 1);
        }
    };
    rec(0);
    return out;
}

// Projective P_v (0-based v): supported on everything reachable from v along arrows.
inline IndecId projective_indec(const Quiver& q, int v) {
    int lo = v, hi = v;
    while (lo > 0 && !q.points_right(lo - 1)) --lo;
    while (hi < q.vertex_count() - 1 && q.points_right(hi)) ++hi;
    return {lo + 1, hi + 1};
}

// The map P_v -> x sending the trivial path at v to the vector `elem` in x_v.
inline Intertwiner map_from_projective(const Quiver& q, int v, const Matrix& elem, const Rep& x) {
    IndecId pv = projective_indec(q, v);
    Intertwiner f;
    for (int w = 0; w < q.vertex_count(); ++w) f.emplace_back(x.dims[w], pv.contains(w + 1) ? 1 : 0, q.prime());
    f[v] = elem;
    for (int w = v; w + 1 < pv.hi; ++w) f[w + 1] = x.maps[w] * f[w];
    for (int w = v; w + 1 > pv.lo; --w) f[w - 1] = x.maps[w - 1] * f[w];
    return f;
}

// Elements of x generating x modulo its radical: (vertex, column vector) pairs.
inline std::vector<std::pair<int, Matrix>> top_elements(const Quiver& q, const Rep& x) {
    std::vector<std::pair<int, Matrix>> out;
    for (int v = 0; v < q.vertex_count(); ++v) {
        Matrix rad(x.dims[v], 0, q.prime());
        for (std::size_t k = 0; k < q.arrows().size(); ++k)
            if (q.arrows()[k].target == v) rad = hstack(rad, x.maps[k]);
        Matrix comp = complement_columns(column_basis(rad), Matrix::identity(x.dims[v], q.prime()));
        for (std::size_t c = 0; c < comp.cols(); ++c) out.push_back({v, comp.column(c)});
    }
    return out;
}

inline std::vector<std::size_t> dim_vector(const Rep& r) { return r.dims; }

}  // namespace tilt
