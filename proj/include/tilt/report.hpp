#pragma once

// Text and JSON forms of atoms, subcategories, torsion pairs and reports, plus
// DOT output for Hasse graphs.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tilt/dercat.hpp"
#include "tilt/errors.hpp"
#include "tilt/hrs.hpp"
#include "tilt/torspairs.hpp"

namespace tilt {

using Json = nlohmann::ordered_json;

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline int read_int(std::string_view s, std::size_t& i, std::string_view what) {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError("expected integer in " + std::string(what) + ": '" + std::string(s) + "'");
    return std::stoi(std::string(s.substr(start, i - start)));
}

inline void expect(std::string_view s, std::size_t& i, char c, std::string_view what) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw ParseError("expected '" + std::string(1, c) + "' in " + std::string(what) + ": '" + std::string(s) + "'");
    ++i;
}

// M[lo,hi] with optional @n, starting at s[i].
inline DAtom read_atom(std::string_view s, std::size_t& i) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != 'M') throw ParseError("expected atom M[lo,hi]@n: '" + std::string(s) + "'");
    ++i;
    expect(s, i, '[', "atom");
    skip_ws(s, i);
    int lo = read_int(s, i, "atom");
    expect(s, i, ',', "atom");
    skip_ws(s, i);
    int hi = read_int(s, i, "atom");
    expect(s, i, ']', "atom");
    int shift = 0;
    if (i < s.size() && s[i] == '@') {
        ++i;
        shift = read_int(s, i, "atom shift");
    }
    if (lo < 1 || hi < lo) throw ParseError("atom bounds need 1 <= lo <= hi: '" + std::string(s) + "'");
    return {{lo, hi}, shift};
}

}  // namespace detail

inline DAtom parse_atom(std::string_view text) {
    std::size_t i = 0;
    DAtom a = detail::read_atom(text, i);
    detail::skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing characters after atom: '" + std::string(text) + "'");
    return a;
}

// Comma separated atoms, optionally wrapped in [ ].
inline std::vector<DAtom> parse_atom_list(std::string_view text) {
    std::size_t i = 0;
    detail::skip_ws(text, i);
    bool bracket = i < text.size() && text[i] == '[';
    if (bracket) ++i;
    std::vector<DAtom> out;
    detail::skip_ws(text, i);
    bool closed = false;
    while (i < text.size()) {
        if (bracket && text[i] == ']') {
            ++i;
            closed = true;
            break;
        }
        out.push_back(detail::read_atom(text, i));
        detail::skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
            ++i;
            detail::skip_ws(text, i);
        }
    }
    if (bracket && !closed) throw ParseError("unterminated atom list: '" + std::string(text) + "'");
    detail::skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing characters after atom list: '" + std::string(text) + "'");
    std::sort(out.begin(), out.end());
    return out;
}

inline void check_atoms(const Quiver& q, const std::vector<DAtom>& atoms) {
    for (const auto& a : atoms)
        if (a.module.hi > q.vertex_count())
            throw ParseError("atom " + name(a) + " exceeds the " + std::to_string(q.vertex_count()) + " vertices of " +
                             q.spec());
}

inline Json atoms_json(const std::vector<DAtom>& atoms, bool with_shift = true) {
    Json out = Json::array();
    for (const auto& a : atoms) out.push_back(name(a, with_shift));
    return out;
}

inline std::vector<DAtom> atoms_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of atoms");
    std::vector<DAtom> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError("atom entries must be strings");
        out.push_back(parse_atom(e.get<std::string>()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// A torsion pair as supplied by the user: finite atom lists, and for derived
// inputs the window they live in.
struct PairInput {
    std::vector<DAtom> torsion;
    std::vector<DAtom> free;
    std::optional<Window> window;
};

inline PairInput parse_pair_json(const Json& j) {
    if (!j.is_object()) throw ParseError("torsion pair JSON must be an object");
    PairInput p;
    if (j.contains("U") || j.contains("V")) {
        if (!j.contains("U") || !j.contains("V")) throw ParseError("torsion pair JSON needs both U and V");
        p.torsion = atoms_from_json(j.at("U"));
        p.free = atoms_from_json(j.at("V"));
    } else if (j.contains("torsion") || j.contains("free")) {
        p.torsion = atoms_from_json(j.value("torsion", Json::array()));
        p.free = atoms_from_json(j.value("free", Json::array()));
    } else {
        throw ParseError("torsion pair JSON needs U/V or torsion/free");
    }
    if (j.contains("window")) {
        const auto& w = j.at("window");
        if (!w.is_object() || !w.contains("lo") || !w.contains("hi") || !w.at("lo").is_number_integer() ||
            !w.at("hi").is_number_integer())
            throw ParseError("window must be {\"lo\": int, \"hi\": int}");
        p.window = Window{w.at("lo").get<int>(), w.at("hi").get<int>()};
    }
    return p;
}

// `U = [...]; V = [...]` or a JSON object.
inline PairInput parse_pair(std::string_view text) {
    std::size_t i = 0;
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        return parse_pair_json(j);
    }
    PairInput p;
    bool seen_u = false, seen_v = false;
    std::string s(text);
    std::stringstream parts(s);
    std::string part;
    while (std::getline(parts, part, ';')) {
        std::size_t k = 0;
        detail::skip_ws(part, k);
        if (k == part.size()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw ParseError("expected U = [...] or V = [...]: '" + part + "'");
        std::string key = part.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char c) { return std::isspace(c); }), key.end());
        auto atoms = parse_atom_list(std::string_view(part).substr(eq + 1));
        if (key == "U") {
            p.torsion = atoms;
            seen_u = true;
        } else if (key == "V") {
            p.free = atoms;
            seen_v = true;
        } else {
            throw ParseError("unknown class '" + key + "' in torsion pair literal");
        }
    }
    if (!seen_u || !seen_v) throw ParseError("torsion pair literal needs both U and V");
    return p;
}

// Reads @path as a file, anything else as an inline literal.
inline std::string read_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read file '" + arg.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json subcat_json(const Subcat& s) {
    Json j;
    j["atoms"] = atoms_json(s.atoms);
    if (s.above) j["above"] = true;
    if (s.below) j["below"] = true;
    return j;
}

inline Json pair_json(const TorsionPairRecord& t, bool with_shift) {
    Json j;
    j["U"] = atoms_json(t.U.atoms, with_shift);
    j["V"] = atoms_json(t.V.atoms, with_shift);
    if (t.U.above) j["U_above"] = true;
    if (t.V.below) j["V_below"] = true;
    j["torsion"] = t.is_torsion;
    j["s_torsion"] = t.is_s_torsion;
    if (!t.witness.empty()) j["witness"] = t.witness;
    return j;
}

inline Json window_pair_json(const Window& w, const TorsionPairRecord& t) {
    Json j;
    j["window"] = {{"lo", w.lo}, {"hi", w.hi}};
    j["torsion"] = atoms_json(t.U.atoms);
    j["free"] = atoms_json(t.V.atoms);
    return j;
}

inline Json extended_heart_json(const ExtendedHeart& h) {
    Json j;
    j["m"] = h.m;
    j["atoms"] = atoms_json(h.atoms);
    return j;
}

inline ExtendedHeart extended_heart_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("atoms") || !j.at("m").is_number_integer())
        throw ParseError("extended heart JSON must be {\"m\": int, \"atoms\": [...]}");
    return ExtendedHeart{j.at("m").get<int>(), atoms_from_json(j.at("atoms")), std::nullopt};
}

inline Json checks_json(const std::vector<Check>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.witness.empty()) j["witness"] = c.witness;
        out.push_back(j);
    }
    return out;
}

inline std::vector<Check> checks_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("checks must be an array");
    std::vector<Check> out;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("name") || !e.contains("pass") || !e.at("name").is_string() ||
            !e.at("pass").is_boolean())
            throw ParseError("check entries need a string name and a boolean pass");
        Check c{e.at("name").get<std::string>(), e.at("pass").get<bool>(), {}};
        if (e.contains("witness")) {
            if (!e.at("witness").is_string()) throw ParseError("check witness must be a string");
            c.witness = e.at("witness").get<std::string>();
        }
        out.push_back(c);
    }
    return out;
}

inline Json hasse_json(const HasseGraph& g, bool with_shift) {
    Json j;
    Json nodes = Json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        nodes.push_back({{"id", i}, {"atoms", atoms_json(g.nodes[i].atoms, with_shift)}, {"boxed", bool(g.boxed[i])}});
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

// Report envelope: {inputs, results, checks: [{name, pass, witness?}]}.
struct Report {
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Check> checks;

    Json to_json() const {
        Json j;
        j["inputs"] = inputs;
        j["results"] = results;
        j["checks"] = checks_json(checks);
        return j;
    }

    static Report from_json(const Json& j) {
        if (!j.is_object()) throw ParseError("report must be an object");
        for (const char* key : {"inputs", "results", "checks"})
            if (!j.contains(key)) throw ParseError(std::string("report is missing '") + key + "'");
        if (!j.at("inputs").is_object() || !j.at("results").is_object())
            throw ParseError("report inputs and results must be objects");
        return Report{j.at("inputs"), j.at("results"), checks_from_json(j.at("checks"))};
    }

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// Graphviz digraph, edges from larger to smaller torsion class.
inline std::string hasse_dot(const HasseGraph& g, const std::string& graph_name, bool with_shift) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(graph_name) << "\" {\n";
    os << "  rankdir=TB;\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        std::string label;
        for (std::size_t k = 0; k < g.nodes[i].atoms.size(); ++k)
            label += (k ? ", " : "") + name(g.nodes[i].atoms[k], with_shift);
        if (label.empty()) label = "0";
        os << "  n" << i << " [label=\"" << dot_escape(label) << "\"";
        if (g.boxed[i])
            os << ", shape=box, boxed=true";
        else
            os << ", shape=plaintext";
        os << "];\n";
    }
    for (auto [a, b] : g.edges) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace tilt
