#pragma once

// tiltcalc front end. run() parses one verb with its options, computes, and
// writes a JSON, DOT or text report.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tilt/dercat.hpp"
#include "tilt/errors.hpp"
#include "tilt/hrs.hpp"
#include "tilt/quiverrep.hpp"
#include "tilt/report.hpp"
#include "tilt/torspairs.hpp"

namespace tilt::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string verb;
    std::string quiver;
    unsigned prime = 2;
    std::string format = "json";
    std::string t1;
    std::string t2;
    std::string window;
    int m = 1;
    bool s_only = false;
    std::string action;
    std::uint64_t seed = 0;
    int samples = 20;
};

struct Output {
    Report report;
    std::string text;
    std::string dot;
    bool has_dot = false;
};

inline std::optional<Window> parse_window(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    int lo = detail::read_int(s, i, "window");
    detail::expect(s, i, ',', "window");
    detail::skip_ws(s, i);
    int hi = detail::read_int(s, i, "window");
    detail::skip_ws(s, i);
    if (i != s.size()) throw ParseError("window must be lo,hi: '" + s + "'");
    if (lo >= hi) throw ParseError("window needs lo < hi: '" + s + "'");
    return Window{lo, hi};
}

inline Json window_json(const Window& w) { return {{"lo", w.lo}, {"hi", w.hi}}; }

inline Json input_pair_json(const PairInput& p, bool with_shift) {
    Json j;
    if (p.window) j["window"] = window_json(*p.window);
    j["torsion"] = atoms_json(p.torsion, with_shift);
    j["free"] = atoms_json(p.free, with_shift);
    return j;
}

inline std::string checks_text(const std::vector<Check>& checks) {
    std::string out = "checks:\n";
    for (const auto& c : checks) {
        out += std::string("  ") + (c.pass ? "pass  " : is_informational(c) ? "info  " : "FAIL  ") + c.name;
        if (!c.witness.empty()) out += "  [" + c.witness + "]";
        out += "\n";
    }
    return out;
}

inline std::string atoms_text(const std::vector<DAtom>& atoms, bool with_shift) {
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? ", " : "") + name(atoms[i], with_shift);
    return s;
}

inline std::string pair_text(const TorsionPairRecord& t, bool with_shift) {
    std::string s = "U = [" + atoms_text(t.U.atoms, with_shift) + "]";
    if (t.U.above) s += " + above";
    s += "; V = [" + atoms_text(t.V.atoms, with_shift) + "]";
    if (t.V.below) s += " + below";
    return s;
}

inline TorsionPairRecord module_pair(const ModuleContext& ctx, const PairInput& p, const std::string& label) {
    check_atoms(ctx.quiver(), p.torsion);
    check_atoms(ctx.quiver(), p.free);
    for (const auto* list : {&p.torsion, &p.free})
        for (const auto& a : *list)
            if (a.shift != 0) throw ParseError(label + ": module atoms carry no shift, got " + name(a));
    if (p.window) throw ParseError(label + ": a window only applies to derived inputs");
    return is_torsion_pair(ctx, ctx.make(p.torsion), ctx.make(p.free));
}

inline TorsionPairRecord window_pair(const WindowContext& ctx, const PairInput& p, const std::string& label) {
    check_atoms(ctx.category().quiver(), p.torsion);
    check_atoms(ctx.category().quiver(), p.free);
    for (const auto* list : {&p.torsion, &p.free})
        for (const auto& a : *list)
            if (!ctx.window().contains(a.shift))
                throw DomainError(label + ": atom " + name(a) + " lies outside the window", name(a));
    return is_torsion_pair(ctx, ctx.torsion_class(p.torsion), ctx.free_class(p.free));
}

inline void require_torsion(const TorsionPairRecord& t, const std::string& label) {
    if (!t.is_torsion) throw DomainError(label + " is not a torsion pair: " + t.witness, t.witness);
}

inline Output cmd_indecs(const Quiver& q) {
    Output out;
    Json atoms = Json::array();
    std::string text;
    for (const auto& m : all_indecomposables(q)) {
        auto dims = realize(q, m).dims;
        atoms.push_back({{"name", name(m)}, {"dims", dims}, {"alias", socle_alias(q, m)}});
        std::string d;
        for (std::size_t i = 0; i < dims.size(); ++i) d += (i ? "," : "") + std::to_string(dims[i]);
        text += name(m) + "  dims (" + d + ")  socle layers " + socle_alias(q, m) + "\n";
    }
    out.report.results["count"] = atoms.size();
    out.report.results["atoms"] = atoms;
    out.text = std::to_string(atoms.size()) + " indecomposables of " + q.spec() + "\n" + text;
    return out;
}

inline Output cmd_homtable(const Quiver& q) {
    Output out;
    HomTable table(q);
    const auto& ind = table.indecs();
    Json names = Json::array(), hom = Json::array(), ext = Json::array();
    Check euler{"hom - ext equals the Euler form"};
    std::vector<Rep> reps;
    for (const auto& m : ind) {
        names.push_back(name(m));
        reps.push_back(realize(q, m));
    }
    std::ostringstream text;
    text << "rows Hom(X, -) / Ext^1(X, -), columns in the order listed\n";
    for (std::size_t i = 0; i < ind.size(); ++i) {
        Json hr = Json::array(), er = Json::array();
        text << name(ind[i]) << " ";
        for (std::size_t j = 0; j < ind.size(); ++j) {
            std::size_t h = table.hom(ind[i], ind[j]);
            std::size_t e = extension_space(q, reps[i], reps[j]).dim();
            hr.push_back(h);
            er.push_back(e);
            text << " " << h << "/" << e;
            long long lhs = static_cast<long long>(h) - static_cast<long long>(e);
            if (lhs != euler_form(q, reps[i].dims, reps[j].dims) && euler.pass) {
                euler.pass = false;
                euler.witness = name(ind[i]) + ", " + name(ind[j]);
            }
        }
        text << "\n";
        hom.push_back(hr);
        ext.push_back(er);
    }
    out.report.results["atoms"] = names;
    out.report.results["hom"] = hom;
    out.report.results["ext"] = ext;
    out.report.checks.push_back(euler);
    out.text = text.str();
    return out;
}

inline Output cmd_tors(const Options& o, const Quiver& q) {
    Output out;
    std::unique_ptr<Context> ctx;
    auto w = parse_window(o.window);
    if (w) {
        ctx = std::make_unique<WindowContext>(std::make_shared<DerivedCategory>(q), *w);
        out.report.inputs["window"] = window_json(*w);
    } else {
        ctx = std::make_unique<ModuleContext>(q);
    }
    const bool ws = ctx->derived();
    auto pairs = enumerate_torsion_pairs(*ctx, o.s_only);
    auto graph = build_hasse(*ctx, pairs);
    Json list = Json::array();
    std::size_t s = 0;
    std::string text;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        list.push_back(pair_json(pairs[i], ws));
        s += pairs[i].is_s_torsion;
        text += "  " + std::to_string(i) + (pairs[i].is_s_torsion ? " [s] " : "     ") + pair_text(pairs[i], ws) + "\n";
    }
    out.report.results["context"] = ctx->id();
    out.report.results["count"] = pairs.size();
    out.report.results["s_count"] = s;
    out.report.results["pairs"] = list;
    out.report.results["graph"] = hasse_json(graph, ws);
    out.text = ctx->id() + "\n" + std::to_string(pairs.size()) + " torsion pairs, " + std::to_string(s) +
               " s-torsion\n" + text;
    out.dot = hasse_dot(graph, "tors", ws);
    out.has_dot = true;
    return out;
}

inline Output interval_output(const Context& ctx, const TorsionPairRecord& t1, const TorsionPairRecord& t2,
                              bool s_only) {
    const bool ws = ctx.derived();
    require_torsion(t1, "t1");
    require_torsion(t2, "t2");
    auto spec = heart_of_interval(ctx, t1, t2);
    auto res = enumerate_interval(ctx, spec, s_only);
    Output out;
    auto& r = out.report.results;
    r["context"] = ctx.id();
    r["heart_category"] = atoms_json(spec.heart.atoms, ws);
    r["counts"] = {{"interval", res.interval.size()},
                   {"interval_s", res.s_count(res.interval)},
                   {"heart", res.heart.size()},
                   {"heart_s", res.s_count(res.heart)},
                   {"heart_unfiltered", res.heart_unfiltered}};
    Json iv = Json::array(), hv = Json::array(), bij = Json::array();
    for (const auto& t : res.interval) iv.push_back(pair_json(t, ws));
    for (const auto& t : res.heart) hv.push_back(pair_json(t, ws));
    for (auto [i, j] : res.bijection) bij.push_back({i, j});
    r["interval"] = iv;
    r["heart"] = hv;
    r["bijection"] = bij;
    r["graphs"] = {{"interval", hasse_json(res.interval_graph, ws)}, {"heart", hasse_json(res.heart_graph, ws)}};
    out.report.checks = res.checks;

    std::ostringstream text;
    text << ctx.id() << "\n";
    text << "heart: [" << atoms_text(spec.heart.atoms, ws) << "]\n";
    text << "interval: " << res.interval.size() << " torsion pairs, " << res.s_count(res.interval) << " s-torsion\n";
    text << "heart pairs: " << res.heart.size() << " torsion pairs, " << res.s_count(res.heart) << " s-torsion ("
         << res.heart_unfiltered << " before the E^-1 filter)\n";
    for (std::size_t i = 0; i < res.interval.size(); ++i) {
        text << "  " << i << (res.interval[i].is_s_torsion ? " [s] " : "     ") << pair_text(res.interval[i], ws)
             << "\n      <-> " << pair_text(res.heart[i], ws) << "\n";
    }
    text << checks_text(res.checks);
    out.text = text.str();
    out.dot = hasse_dot(res.interval_graph, "interval", ws) + hasse_dot(res.heart_graph, "heart", ws);
    out.has_dot = true;
    return out;
}

inline Output cmd_interval(const Options& o, const Quiver& q) {
    ModuleContext ctx(q);
    auto p1 = parse_pair(read_arg(o.t1)), p2 = parse_pair(read_arg(o.t2));
    auto t1 = module_pair(ctx, p1, "t1"), t2 = module_pair(ctx, p2, "t2");
    auto out = interval_output(ctx, t1, t2, o.s_only);
    out.report.inputs["t1"] = input_pair_json(p1, false);
    out.report.inputs["t2"] = input_pair_json(p2, false);
    return out;
}

inline Output cmd_derived_interval(const Options& o, const Quiver& q) {
    auto p1 = parse_pair(read_arg(o.t1)), p2 = parse_pair(read_arg(o.t2));
    auto w = parse_window(o.window);
    for (const auto* p : {&p1, &p2})
        if (p->window) {
            if (w && !(*w == *p->window)) throw ParseError("t1, t2 and --window disagree on the window");
            w = p->window;
        }
    if (!w) throw ParseError("derived-interval needs a window, from --window or the pair JSON");
    WindowContext ctx(std::make_shared<DerivedCategory>(q), *w);
    auto t1 = window_pair(ctx, p1, "t1"), t2 = window_pair(ctx, p2, "t2");
    auto out = interval_output(ctx, t1, t2, o.s_only);
    out.report.inputs["window"] = window_json(*w);
    out.report.inputs["t1"] = input_pair_json(p1, true);
    out.report.inputs["t2"] = input_pair_json(p2, true);
    return out;
}

inline Window hrs_window(const Options& o) {
    if (o.m < 1) throw ParseError("--m must be positive");
    if (auto w = parse_window(o.window)) return *w;
    return Window{-2 * o.m - 2, 2 * o.m + 2};
}

inline TStructureDesc hrs_source(const Options& o, const WindowContext& ctx) {
    if (o.t1.empty()) return standard_tstructure(ctx);
    auto p = parse_pair(read_arg(o.t1));
    if (p.window && !(*p.window == ctx.window())) throw ParseError("t-structure window differs from --window");
    auto t = window_pair(ctx, p, "t-structure");
    return make_tstructure(ctx, t.U);
}

inline Output cmd_hrs(const Options& o, const Quiver& q) {
    Output out;
    Window w = hrs_window(o);
    auto dc = std::make_shared<DerivedCategory>(q);
    WindowContext ctx(dc, w);
    auto t = hrs_source(o, ctx);
    out.report.inputs["window"] = window_json(w);
    out.report.inputs["m"] = o.m;
    out.report.inputs["t_structure"] = window_pair_json(w, t.pair);
    auto& r = out.report.results;
    std::ostringstream text;
    text << ctx.id() << "\n";
    if (o.action.empty()) {
        std::vector<Check> checks;
        auto h = extended_heart(ctx, t, o.m, &checks);
        auto ids = extended_heart_identities(*dc, h);
        checks.insert(checks.end(), ids.begin(), ids.end());
        r["extended_heart"] = extended_heart_json(h);
        out.report.checks = checks;
        text << o.m << "-extended heart: [" << atoms_text(h.atoms, true) << "]\n" << checks_text(checks);
        out.text = text.str();
        return out;
    }
    auto res = hrs_enumerate(ctx, t, o.m);
    auto ids = extended_heart_identities(*dc, res.heart);
    out.report.checks = res.checks;
    out.report.checks.insert(out.report.checks.end(), ids.begin(), ids.end());
    r["extended_heart"] = extended_heart_json(res.heart);
    r["counts"] = {{"s_torsion_pairs", res.stors.size()},
                   {"hearts", res.hearts.size()},
                   {"t_structures", res.tstructures.size()}};
    Json table = Json::array();
    for (std::size_t i = 0; i < res.stors.size(); ++i) {
        Json row;
        row["index"] = i;
        row["s_torsion_pair"] = pair_json(res.stors[i], true);
        row["heart"] = extended_heart_json(res.hearts[i]);
        row["t_structure"] = window_pair_json(w, res.tstructures[i].pair);
        table.push_back(row);
    }
    r["bijection"] = table;
    r["graphs"] = {{"s_torsion_pairs", hasse_json(res.stors_graph, true)},
                   {"hearts", hasse_json(res.hearts_graph, true)},
                   {"t_structures", hasse_json(res.tstr_graph, true)}};
    text << o.m << "-extended heart: [" << atoms_text(res.heart.atoms, true) << "]\n";
    text << res.stors.size() << " s-torsion pairs, " << res.hearts.size() << " hearts, " << res.tstructures.size()
         << " t-structures\n";
    for (std::size_t i = 0; i < res.stors.size(); ++i) {
        text << "  " << i << "  T = [" << atoms_text(res.stors[i].U.atoms, true) << "]; F = ["
             << atoms_text(res.stors[i].V.atoms, true) << "]\n";
        text << "     heart [" << atoms_text(res.hearts[i].atoms, true) << "]\n";
        std::vector<DAtom> aisle;
        for (const auto& a : res.tstructures[i].pair.U.atoms)
            if (a.shift < w.hi) aisle.push_back(a);
        text << "     aisle [" << atoms_text(aisle, true) << "] + shifts >= " << w.hi << "\n";
    }
    text << checks_text(out.report.checks);
    out.text = text.str();
    out.dot = hasse_dot(res.stors_graph, "s_torsion_pairs", true) + hasse_dot(res.hearts_graph, "hearts", true) +
              hasse_dot(res.tstr_graph, "t_structures", true);
    out.has_dot = true;
    return out;
}

inline Output cmd_extend(const Options& o, const Quiver& q) {
    Output out;
    Window w = hrs_window(o);
    WindowContext ctx(std::make_shared<DerivedCategory>(q), w);
    auto t = hrs_source(o, ctx);
    auto h = extended_heart(ctx, t, o.m);
    auto tstrs = enumerate_tstructures(ctx, t, h);
    TStructureExtension ext(ctx, t, [](const DAtom&) { return true; }, o.m);
    Check lm{"lambda after mu is the identity"}, ml{"mu after lambda is the identity"},
        composite{"mu equals the composite through the extended heart"};
    Json rows = Json::array();
    for (std::size_t i = 0; i < tstrs.size(); ++i) {
        auto l = ext.lambda(tstrs[i]);
        auto mu = ext.mu(l);
        auto pp = ext.psi_phi_prime(l);
        if (!(mu.pair == tstrs[i].pair) && ml.pass) {
            ml.pass = false;
            ml.witness = std::to_string(i);
        }
        if (!(ext.lambda(mu) == l) && lm.pass) {
            lm.pass = false;
            lm.witness = std::to_string(i);
        }
        if (!(pp.pair == mu.pair) && composite.pass) {
            composite.pass = false;
            composite.witness = std::to_string(i);
        }
        rows.push_back({{"index", i}, {"t_structure", window_pair_json(w, tstrs[i].pair)}});
    }
    out.report.inputs["window"] = window_json(w);
    out.report.inputs["m"] = o.m;
    out.report.results["subcategory"] = "full window";
    out.report.results["proper"] = ext.proper();
    out.report.results["note"] = ext.note();
    out.report.results["count"] = tstrs.size();
    out.report.results["t_structures"] = rows;
    out.report.checks = {lm, ml, composite};
    out.text = ctx.id() + "\n" + std::to_string(tstrs.size()) + " t-structures in the interval\n" + ext.note() +
               "\n" + checks_text(out.report.checks);
    return out;
}

// Closure of a random atom set under left_perp(right_perp(-)) must be a torsion
// class; s-torsion must match the Serre test on both classes.
inline Output random_check(const Options& o, const Quiver& q) {
    if (o.samples < 1) throw ParseError("--samples must be positive");
    Output out;
    ModuleContext ctx(q);
    std::mt19937_64 rng(o.seed);
    Check tors{"sampled closures are torsion pairs"}, serre{"s-torsion iff both classes are Serre"};
    Json samples = Json::array();
    for (int k = 0; k < o.samples; ++k) {
        std::vector<DAtom> pick;
        for (const auto& a : ctx.atoms())
            if (rng() & 1u) pick.push_back(a);
        Subcat u = ctx.left_perp(ctx.right_perp(ctx.make(pick)));
        auto r = is_torsion_pair(ctx, u, ctx.right_perp(u));
        std::set<IndecId> su, sv;
        for (const auto& a : r.U.atoms) su.insert(a.module);
        for (const auto& a : r.V.atoms) sv.insert(a.module);
        bool s = serre_check(q, su) && serre_check(q, sv);
        if (!r.is_torsion && tors.pass) {
            tors.pass = false;
            tors.witness = pair_text(r, false) + ": " + r.witness;
        }
        if (r.is_torsion && s != r.is_s_torsion && serre.pass) {
            serre.pass = false;
            serre.witness = pair_text(r, false);
        }
        samples.push_back({{"generators", atoms_json(pick, false)}, {"pair", pair_json(r, false)}, {"serre", s}});
    }
    out.report.inputs["seed"] = o.seed;
    out.report.inputs["samples"] = o.samples;
    out.report.results["samples"] = samples;
    out.report.checks = {tors, serre};
    out.text = std::to_string(o.samples) + " random samples on " + q.spec() + " (seed " + std::to_string(o.seed) +
               ")\n" + checks_text(out.report.checks);
    return out;
}

inline Output cmd_check(const Options& o, const Quiver& q) {
    if (o.t1.empty()) {
        if (!o.window.empty()) throw UsageError("random checks run in mod kQ; drop --window or pass --t1");
        return random_check(o, q);
    }
    Output out;
    auto p = parse_pair(read_arg(o.t1));
    auto w = parse_window(o.window);
    if (p.window) {
        if (w && !(*w == *p.window)) throw ParseError("--window differs from the pair's window");
        w = p.window;
    }
    std::unique_ptr<Context> ctx;
    TorsionPairRecord r;
    if (w) {
        auto wc = std::make_unique<WindowContext>(std::make_shared<DerivedCategory>(q), *w);
        r = window_pair(*wc, p, "pair");
        ctx = std::move(wc);
        out.report.inputs["window"] = window_json(*w);
    } else {
        auto mc = std::make_unique<ModuleContext>(q);
        r = module_pair(*mc, p, "pair");
        ctx = std::move(mc);
    }
    const bool ws = ctx->derived();
    out.report.inputs["pair"] = input_pair_json(p, ws);
    out.report.results["context"] = ctx->id();
    out.report.results["pair"] = pair_json(r, ws);
    Json facts = Json::array();
    for (const auto& [a, f] : r.factorizations) facts.push_back({{"atom", name(a, ws)}, {"triangle", f}});
    out.report.results["factorizations"] = facts;
    bool tp1 = r.witness.rfind("TP1", 0) != 0;
    Check c1{"no maps from U to V", tp1, tp1 ? "" : r.witness};
    Check c2{"every atom lies in U * V", r.is_torsion || !tp1, (r.is_torsion || !tp1) ? "" : r.witness};
    out.report.checks = {c1, c2};
    std::ostringstream text;
    text << ctx->id() << "\n" << pair_text(r, ws) << "\n";
    text << (r.is_torsion ? (r.is_s_torsion ? "s-torsion pair\n" : "torsion pair, not s-torsion: " + r.witness + "\n")
                          : "not a torsion pair\n");
    for (const auto& [a, f] : r.factorizations) text << "  " << name(a, ws) << ": " << f << "\n";
    text << checks_text(out.report.checks);
    out.text = text.str();
    return out;
}

inline Json error_json(const std::string& kind, const std::string& message, const std::string& witness) {
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    if (!witness.empty()) e["witness"] = witness;
    return Json{{"error", e}};
}

inline bool is_prime_arg(unsigned p) { return p >= 2 && is_prime(static_cast<Elem>(p)); }

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tiltcalc: torsion pairs, interval hearts and extended hearts for type A quivers", "tiltcalc"};
    app.require_subcommand(1, 1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--quiver,-q", o.quiver, "orientation such as 1>2<3")->required();
        s->add_option("--prime,-p", o.prime, "field size");
        s->add_option("--format,-f", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    };
    auto pairs = [&](CLI::App* s, bool required) {
        auto a = s->add_option("--t1", o.t1, "torsion pair: literal or @file");
        auto b = s->add_option("--t2", o.t2, "torsion pair: literal or @file");
        if (required) {
            a->required();
            b->required();
        }
    };
    auto window = [&](CLI::App* s) { s->add_option("--window,-w", o.window, "shift window lo,hi"); };

    auto* indecs = app.add_subcommand("indecs", "list the indecomposables");
    common(indecs);
    auto* homtable = app.add_subcommand("homtable", "Hom and Ext^1 between indecomposables");
    common(homtable);
    auto* tors = app.add_subcommand("tors", "enumerate torsion pairs");
    common(tors);
    window(tors);
    tors->add_flag("--s-only", o.s_only, "keep s-torsion pairs only");
    auto* interval = app.add_subcommand("interval", "interval of torsion pairs in mod kQ");
    common(interval);
    pairs(interval, true);
    interval->add_flag("--s-only", o.s_only, "keep s-torsion pairs only");
    auto* dinterval = app.add_subcommand("derived-interval", "interval of torsion pairs in a derived window");
    common(dinterval);
    pairs(dinterval, true);
    window(dinterval);
    dinterval->add_flag("--s-only", o.s_only, "keep s-torsion pairs only");
    auto* hrs = app.add_subcommand("hrs", "m-extended heart, its s-torsion pairs and tilts");
    common(hrs);
    window(hrs);
    hrs->add_option("--m", o.m, "extension width");
    hrs->add_option("--t1", o.t1, "source t-structure as a window pair (default: standard)");
    hrs->add_option("action", o.action, "enumerate")->check(CLI::IsMember({"enumerate"}));
    auto* extend = app.add_subcommand("extend", "restriction and extension of t-structures");
    common(extend);
    window(extend);
    extend->add_option("--m", o.m, "extension width");
    extend->add_option("--t1", o.t1, "source t-structure as a window pair (default: standard)");
    auto* check = app.add_subcommand("check", "verify one torsion pair, or run a seeded random property check");
    common(check);
    window(check);
    check->add_option("--t1", o.t1, "torsion pair: literal or @file");
    check->add_option("--seed", o.seed, "seed for the random property check");
    check->add_option("--samples", o.samples, "number of random samples");

    static const std::set<std::string> verbs{"indecs", "homtable", "tors", "interval",
                                             "derived-interval", "hrs", "extend", "check"};
    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !verbs.count(args[0])) {
        err << "usage error: unknown verb '" << args[0] << "'\n";
        return 2;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    o.verb = app.get_subcommands().front()->get_name();

    try {
        if (!is_prime_arg(o.prime)) throw UsageError("--prime must be a prime, got " + std::to_string(o.prime));
        bool graphs = o.verb == "tors" || o.verb == "interval" || o.verb == "derived-interval" ||
                      (o.verb == "hrs" && !o.action.empty());
        if (o.format == "dot" && !graphs) throw UsageError("--format dot is not available for " + o.verb);
        Quiver q = parse_quiver(o.quiver, o.prime);

        Output res;
        if (o.verb == "indecs") res = cmd_indecs(q);
        else if (o.verb == "homtable") res = cmd_homtable(q);
        else if (o.verb == "tors") res = cmd_tors(o, q);
        else if (o.verb == "interval") res = cmd_interval(o, q);
        else if (o.verb == "derived-interval") res = cmd_derived_interval(o, q);
        else if (o.verb == "hrs") res = cmd_hrs(o, q);
        else if (o.verb == "extend") res = cmd_extend(o, q);
        else res = cmd_check(o, q);

        Json inputs;
        inputs["verb"] = o.verb;
        inputs["quiver"] = q.spec();
        inputs["prime"] = o.prime;
        for (auto it = res.report.inputs.begin(); it != res.report.inputs.end(); ++it) inputs[it.key()] = it.value();
        res.report.inputs = inputs;

        if (o.format == "json")
            out << res.report.to_json().dump(2) << "\n";
        else if (o.format == "dot")
            out << res.dot;
        else
            out << res.text;

        auto fail = first_failure(res.report.checks);
        if (fail) {
            err << "verification failed: " << fail->name << (fail->witness.empty() ? "" : " [" + fail->witness + "]")
                << "\n";
            return 1;
        }
        if (o.verb == "check" && !o.t1.empty() && !res.report.results["pair"]["torsion"].get<bool>()) return 1;
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        if (o.format == "json")
            out << error_json("domain", e.what(), e.witness()).dump(2) << "\n";
        else
            out << "error: " << e.what() << "\n";
        return 1;
    } catch (const ContractError& e) {
        if (o.format == "json")
            out << error_json("contract", e.what(), "").dump(2) << "\n";
        else
            out << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tilt::cli
