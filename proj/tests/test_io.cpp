#include <gtest/gtest.h>

#include "arfpf/io.hpp"
#include "support.hpp"

using namespace arfpf;
using arfpf::testing::fixture;

TEST(GraphFile, RoundTripsFixtures) {
  for (const auto& name : arfpf::testing::all_fixtures()) {
    const auto eg = fixture(name);
    const std::string text = serialize_graph(eg);
    const auto again = parse_graph_text(text);
    EXPECT_EQ(again, eg) << name;
    EXPECT_EQ(serialize_graph(again), text) << name;
  }
}

TEST(GraphFile, ParsesLoopsAndComments) {
  const auto eg = parse_graph_text("# one loop\nV 1\nE 0 0 0\n\nR 0: 0a 0b\n");
  EXPECT_EQ(eg.graph.edge_count(), 1);
  EXPECT_TRUE(eg.graph.is_loop(0));
  EXPECT_EQ(eg.rotation.at(0), (std::vector<int>{0, 1}));
}

TEST(GraphFile, IsolatedVertexMayOmitRotation) {
  const auto eg = parse_graph_text("V 3\nE 0 0 1\nR 0: 0a\nR 1: 0b\n");
  EXPECT_TRUE(eg.rotation.at(2).empty());
}

TEST(GraphFile, UnknownSectionReportsLine) {
  try {
    parse_graph_text("V 2\nE 0 0 1\nX 1 2\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "line 3: unknown section 'X'");
  }
}

TEST(GraphFile, Errors) {
  EXPECT_THROW(parse_graph_text("E 0 0 1\n"), InputError);
  EXPECT_THROW(parse_graph_text("V 2\nE 1 0 1\n"), InputError);
  EXPECT_THROW(parse_graph_text("V 2\nE 0 0 2\n"), InputError);
  EXPECT_THROW(parse_graph_text("V 2\nE 0 0 1\nR 0: 0a\n"), StructuralError);
  EXPECT_THROW(parse_graph_text("V 2\nE 0 0 1\nR 0: 0a\nR 1: 0c\n"), InputError);
  EXPECT_THROW(parse_graph_text("V 2\nE 0 0 1\nR 0: 0b\nR 1: 0a\n"), StructuralError);
}

TEST(Weights, ParseFractionsAndIntegers) {
  const auto w = parse_weights(nlohmann::json::parse(R"({"0": "3/4", "1": 2, "2": "-5"})"), 3);
  EXPECT_EQ(w[0], Rational(3, 4));
  EXPECT_EQ(w[1], 2);
  EXPECT_EQ(w[2], -5);
  EXPECT_EQ(parse_weights(weights_to_json(w), 3), w);
}

TEST(Weights, MissingEdgeIsNamed) {
  nlohmann::json doc = nlohmann::json::object();
  for (int e = 0; e < 10; ++e)
    if (e != 7) doc[std::to_string(e)] = "1";
  try {
    parse_weights(doc, 10);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "missing weight for edge 7");
  }
}

TEST(Weights, RejectsBadEntries) {
  EXPECT_THROW(parse_weights(nlohmann::json::parse(R"({"0": "1/0"})"), 1), InputError);
  EXPECT_THROW(parse_weights(nlohmann::json::parse(R"({"x": "1"})"), 1), InputError);
  EXPECT_THROW(parse_weights(nlohmann::json::parse(R"({"0": "1", "1": "1"})"), 1), InputError);
  EXPECT_THROW(parse_weights(nlohmann::json::parse(R"({"0": 0.5})"), 1), InputError);
}

TEST(FamilyJson, GenusZeroHasOneMember) {
  const auto eg = fixture("k4");
  const auto j = family_to_json(prepare_even_poly(eg.graph, eg.rotation));
  EXPECT_EQ(j["family_size"], 1);
  ASSERT_EQ(j["components"][0]["members"].size(), 1U);
  const std::string alpha = j["components"][0]["members"][0]["alpha"];
  EXPECT_TRUE(alpha == "1" || alpha == "-1");
}

TEST(FamilyJson, GenusOneListsFourForms) {
  const auto eg = fixture("k5");
  const auto j = family_to_json(prepare_even_poly(eg.graph, eg.rotation));
  const auto& members = j["components"][0]["members"];
  ASSERT_EQ(members.size(), 4U);
  int arf_ones = 0;
  for (const auto& m : members) {
    arf_ones += m["arf"].get<int>();
    for (int e : m["flips"]) EXPECT_LT(e, 10);
  }
  EXPECT_EQ(arf_ones, 1);
}
