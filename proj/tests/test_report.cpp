#include <gtest/gtest.h>

#include <memory>

#include "tilt/report.hpp"

using namespace tilt;

namespace {

DAtom at(int lo, int hi, int shift = 0) { return {{lo, hi}, shift}; }

}  // namespace

TEST(Parsing, AtomsWithAndWithoutShift) {
    EXPECT_EQ(parse_atom("M[1,2]"), at(1, 2));
    EXPECT_EQ(parse_atom(" M[ 2 , 3 ]@-2 "), at(2, 3, -2));
    EXPECT_EQ(parse_atom_list("[M[2,2], M[1,1]]"), (std::vector<DAtom>{at(1, 1), at(2, 2)}));
    EXPECT_EQ(parse_atom_list("M[1,1]@1,M[1,1]"), (std::vector<DAtom>{at(1, 1), at(1, 1, 1)}));
    EXPECT_TRUE(parse_atom_list("[]").empty());
}

TEST(Parsing, MalformedAtomsAreParseErrors) {
    EXPECT_THROW(parse_atom("M[2,1]"), ParseError);
    EXPECT_THROW(parse_atom("M[0,1]"), ParseError);
    EXPECT_THROW(parse_atom("N[1,1]"), ParseError);
    EXPECT_THROW(parse_atom("M[1,1]x"), ParseError);
    EXPECT_THROW(parse_atom_list("[M[1,1]"), ParseError);
    EXPECT_THROW(check_atoms(parse_quiver("1>2"), {at(1, 3)}), ParseError);
}

TEST(Parsing, PairLiteralAndJsonAgree) {
    auto lit = parse_pair("U = [M[2,2]]; V = [M[1,1]]");
    auto js = parse_pair(R"({"U": ["M[2,2]"], "V": ["M[1,1]"]})");
    auto named = parse_pair(R"({"torsion": ["M[2,2]"], "free": ["M[1,1]"]})");
    EXPECT_EQ(lit.torsion, js.torsion);
    EXPECT_EQ(lit.free, js.free);
    EXPECT_EQ(named.torsion, js.torsion);
    EXPECT_FALSE(lit.window.has_value());
    auto w = parse_pair(R"({"torsion": [], "free": [], "window": {"lo": -3, "hi": 2}})");
    ASSERT_TRUE(w.window.has_value());
    EXPECT_EQ(w.window->lo, -3);
    EXPECT_EQ(w.window->hi, 2);
}

TEST(Parsing, MalformedPairsAreParseErrors) {
    EXPECT_THROW(parse_pair("U = [M[1,1]]"), ParseError);
    EXPECT_THROW(parse_pair("W = []; V = []"), ParseError);
    EXPECT_THROW(parse_pair("{\"U\": []"), ParseError);
    EXPECT_THROW(parse_pair(R"({"U": []})"), ParseError);
    EXPECT_THROW(parse_pair(R"({"U": [1], "V": []})"), ParseError);
    EXPECT_THROW(parse_pair(R"({"U": [], "V": [], "window": {"lo": 1}})"), ParseError);
    EXPECT_THROW(read_arg("@/nonexistent/pair.json"), ParseError);
}

TEST(Parsing, DataFilesLoad) {
    auto p = parse_pair(read_arg(std::string("@") + TILT_DATA_DIR + "/a2-derived-t1.json"));
    ASSERT_TRUE(p.window.has_value());
    EXPECT_FALSE(p.torsion.empty());
    EXPECT_FALSE(p.free.empty());
}

TEST(Report, RoundTripsThroughJson) {
    ModuleContext ctx(parse_quiver("1>2"));
    auto pairs = enumerate_torsion_pairs(ctx);
    Report r;
    r.inputs["quiver"] = "1>2";
    r.results["pair"] = pair_json(pairs[1], false);
    r.results["graph"] = hasse_json(build_hasse(ctx, pairs), false);
    r.checks = {Check{"first", true, ""}, Check{"second", false, "M[1,1]"}};
    auto j = r.to_json();
    auto back = Report::from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.to_json().dump(), j.dump());
    EXPECT_FALSE(back.all_pass());
    EXPECT_EQ(back.checks[1].witness, "M[1,1]");
}

TEST(Report, SchemaViolationsAreRejected) {
    EXPECT_THROW(Report::from_json(Json::array()), ParseError);
    EXPECT_THROW(Report::from_json(Json{{"inputs", Json::object()}, {"results", Json::object()}}), ParseError);
    Json bad{{"inputs", Json::object()}, {"results", Json::object()}, {"checks", Json::array({Json{{"name", 1}}})}};
    EXPECT_THROW(Report::from_json(bad), ParseError);
}

TEST(Report, ExtendedHeartRoundTrip) {
    ExtendedHeart h{2, {at(1, 1, 0), at(1, 1, 1)}, std::nullopt};
    auto back = extended_heart_from_json(extended_heart_json(h));
    EXPECT_EQ(back.m, 2);
    EXPECT_EQ(back.atoms, h.atoms);
    EXPECT_THROW(extended_heart_from_json(Json{{"atoms", Json::array()}}), ParseError);
}

TEST(Dot, BoxedNodesAreMarked) {
    ModuleContext ctx(parse_quiver("1>2"));
    auto pairs = enumerate_torsion_pairs(ctx);
    auto g = build_hasse(ctx, pairs);
    auto dot = hasse_dot(g, "tors", false);
    EXPECT_EQ(dot.rfind("digraph \"tors\" {", 0), 0u);
    EXPECT_NE(dot.find("boxed=true"), std::string::npos);
    EXPECT_NE(dot.find("label=\"0\""), std::string::npos);
    EXPECT_EQ(dot_escape("a\"b"), "a\\\"b");
}
