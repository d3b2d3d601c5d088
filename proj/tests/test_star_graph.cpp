#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "srw/builders.hpp"
#include "srw/graph_io.hpp"
#include "srw/star_graph.hpp"
#include "srw/zoo.hpp"

using namespace srw;

namespace {

GraphSpec spec_of(std::vector<GraphSpec::Vertex> v, std::vector<GraphSpec::Arc> e) { return {std::move(v), std::move(e)}; }

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::shared_ptr<const StarGraph> share(StarGraph g) { return std::make_shared<const StarGraph>(std::move(g)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Validate, TriangleIsValid) {
  auto s = spec_of({{"1", "1"}, {"2", "2"}, {"3", "3"}},
                   {{"1", "2"}, {"2", "1"}, {"2", "3"}, {"3", "2"}, {"1", "3"}, {"3", "1"}});
  EXPECT_TRUE(validate_star_graph(s).ok());
}

TEST(Validate, SwapTwoCycleIsValid) {
  EXPECT_TRUE(validate_star_graph(spec_of({{"1", "2"}, {"2", "1"}}, {{"1", "2"}, {"2", "1"}})).ok());
}

TEST(Validate, MissingMirrorEdgeNamesTheEdge) {
  auto rep = validate_star_graph(spec_of({{"1", "1"}, {"2", "2"}}, {{"1", "2"}}));
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations[0].code, ErrorCode::MissingMirrorEdge);
  EXPECT_NE(rep.summary().find("(2,1)"), std::string::npos);
}

TEST(Validate, ReportsEveryViolation) {
  // 1* = 2 but 2* = 3: not an involution; edge (1,3) lacks its mirror.
  auto rep = validate_star_graph(spec_of({{"1", "2"}, {"2", "3"}, {"3", "3"}}, {{"1", "3"}, {"1", "9"}}));
  std::set<ErrorCode> codes;
  for (const auto& v : rep.violations) codes.insert(v.code);
  EXPECT_TRUE(codes.count(ErrorCode::NotInvolution));
  EXPECT_TRUE(codes.count(ErrorCode::UnknownVertex));
  EXPECT_GE(rep.violations.size(), 2u);
}

TEST(Validate, BuildThrowsFirstCode) {
  EXPECT_EQ(code_of([] { StarGraph::build(spec_of({{"1", "1"}, {"2", "2"}}, {{"1", "2"}})); }),
            ErrorCode::MissingMirrorEdge);
}

TEST(Validate, DisconnectedIsRejected) {
  auto s = spec_of({{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}},
                   {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}});
  EXPECT_EQ(code_of([&] { StarGraph::build(s); }), ErrorCode::NotConnected);
}

TEST(Classes, TrianglePairsEdges) {
  auto cfg = zoo_triangle();
  const auto& g = cfg.graph();
  EXPECT_EQ(g.class_count(), 3u);
  for (const auto& c : g.classes()) EXPECT_EQ(c.members.size(), 2u);
  EXPECT_EQ(g.self_paired_count(), 0u);
}

TEST(Classes, SwapTwoCycleIsSelfPaired) {
  auto cfg = zoo_two_cycle();
  const auto& g = cfg.graph();
  EXPECT_EQ(g.class_count(), 2u);
  EXPECT_EQ(g.self_paired_count(), 2u);
}

TEST(Classes, DeBruijn22) {
  auto g = build_de_bruijn(2, 2);
  EXPECT_EQ(g.class_count(), 6u);
  EXPECT_EQ(g.self_paired_count(), 4u);
  std::size_t members = 0;
  for (const auto& c : g.classes()) members += c.members.size();
  EXPECT_EQ(members, g.edge_count());
}

TEST(Divergence, Examples) {
  auto tcfg = zoo_triangle();
  const auto& tri = tcfg.graph();
  EdgeVec x(tri.edge_count());
  for (Index e = 0; e < x.size(); ++e) x[e] = 1.0 + static_cast<double>(tri.class_of(e));
  for (double d : divergence(tri, x)) EXPECT_EQ(d, 0.0);

  auto wcfg = zoo_two_cycle();
  const auto& two = wcfg.graph();
  std::vector<Rational> y(2);
  y[*two.find_edge(two.require("1"), two.require("2"))] = 1;
  y[*two.find_edge(two.require("2"), two.require("1"))] = 2;
  auto d = divergence(two, y);
  EXPECT_EQ(d[two.require("1")], -1);
  EXPECT_EQ(d[two.require("2")], 1);
}

TEST(Divergence, AntisymmetricOnSymmetricVectors) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (const auto& z : graph_zoo()) {
    const auto& g = z.config.graph();
    for (int t = 0; t < 100; ++t) {
      std::vector<Rational> c(g.class_count());
      for (auto& v : c) v = frac(num(rng), den(rng));
      auto x = class_to_edge(g, c);
      auto d = divergence(g, x);
      for (Index i = 0; i < g.vertex_count(); ++i) ASSERT_EQ(d[g.star(i)], -d[i]) << z.name;
    }
  }
}

TEST(Divergence, Linear) {
  const auto g = build_de_bruijn(2, 2);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-9, 9);
  std::vector<Rational> x(g.edge_count()), y(g.edge_count()), z(g.edge_count());
  Rational a(3, 7), b(-2, 5);
  for (Index e = 0; e < x.size(); ++e) {
    x[e] = num(rng);
    y[e] = frac(num(rng), 4);
    z[e] = a * x[e] + b * y[e];
  }
  auto dx = divergence(g, x), dy = divergence(g, y), dz = divergence(g, z);
  for (Index i = 0; i < dz.size(); ++i) EXPECT_EQ(dz[i], a * dx[i] + b * dy[i]);
}

TEST(DivergenceCondition, Examples) {
  EXPECT_TRUE(check_divergence_condition(zoo_triangle("1")));
  EXPECT_TRUE(check_divergence_condition(zoo_triangle("3")));
  auto two = zoo_two_cycle();
  EXPECT_TRUE(check_divergence_condition(two));
  EXPECT_FALSE(check_divergence_condition(two.with_start(two.graph().require("2"))));
  EXPECT_EQ(code_of([&] { require_divergence_condition(two.with_start(two.graph().require("2"))); }),
            ErrorCode::DivergenceConditionViolated);
}

TEST(WeightConfig, RejectsAsymmetricAlpha) {
  auto g = share(StarGraph::build(spec_of({{"a", "a"}, {"b", "b"}}, {{"a", "b"}, {"b", "a"}})));
  EXPECT_EQ(code_of([&] { WeightConfig::from_edge_alpha(g, {Rational(1), Rational(2)}, 0); }),
            ErrorCode::OutOfDomain);
}

TEST(Builders, DeBruijn) {
  auto g = build_de_bruijn(2, 2);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 8u);
  std::vector<std::string> v0;
  for (Index i : g.v0()) v0.push_back(g.id(i));
  EXPECT_EQ(v0, (std::vector<std::string>{"00", "11"}));
  auto g1 = build_de_bruijn(2, 1);
  EXPECT_EQ(g1.vertex_count(), 2u);
  EXPECT_EQ(g1.edge_count(), 4u);
  EXPECT_EQ(g1.v0().size(), 2u);
  EXPECT_EQ(code_of([] { build_de_bruijn(2, 20, 1000); }), ErrorCode::SizeLimit);
}

TEST(Builders, Rwde) {
  DirectedGraph one{{"a", "b"}, {{"a", "b"}}};
  auto d = build_rwde(one, RwdeMode::Doubled);
  EXPECT_EQ(d.vertex_count(), 4u);
  EXPECT_EQ(d.edge_count(), 2u);
  for (const auto& c : d.classes()) EXPECT_EQ(c.members.size(), 2u);
  auto gl = build_rwde(one, RwdeMode::Glued, "a");
  EXPECT_EQ(gl.vertex_count(), 3u);
  EXPECT_EQ(gl.kind(gl.require("a")), VertexKind::Fixed);
}

TEST(Builders, Amnesia) {
  auto g = build_amnesia(2, 2);
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_EQ(g.edge_count(), 8u);
  Index e = *g.find_edge(g.require("01"), g.require("1"));
  Index m = g.mirror(e);
  EXPECT_EQ(g.id(g.edge(m).tail), "1");
  EXPECT_EQ(g.id(g.edge(m).head), "10");
}

TEST(Builders, VariableOrderEmptyIsIdentity) {
  auto g = build_amnesia(2, 2);
  auto r = restrict_variable_order(g, {});
  EXPECT_EQ(canonical_graph_text(r, std::vector<Rational>(r.class_count(), 1), std::nullopt),
            canonical_graph_text(g, std::vector<Rational>(g.class_count(), 1), std::nullopt));
}

TEST(Builders, VariableOrderNotClosed) {
  auto g = build_amnesia(2, 2);
  EXPECT_EQ(missing_context_words(g, {"0"}), (std::set<std::string>{"00", "01", "10"}));
  try {
    restrict_variable_order(g, {"0"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContextNotClosed);
    EXPECT_NE(std::string(e.what()).find("00"), std::string::npos);
  }
}

TEST(Builders, VariableOrderPrunesAppendEdges) {
  auto g = build_amnesia(2, 3);
  std::set<std::string> c{"0"};
  for (auto m = missing_context_words(g, c); !m.empty(); m = missing_context_words(g, c)) c.insert(m.begin(), m.end());
  auto r = restrict_variable_order(g, c);
  EXPECT_TRUE(validate_star_graph(r.to_spec()).ok());
  // Length-2 words ending in 0 lose their append edges.
  for (std::string w : {"00", "10"})
    for (char a : {'0', '1'}) {
      auto t = r.find(w), h = r.find(w + a);
      EXPECT_FALSE(t && h && r.find_edge(*t, *h)) << w << "->" << w + a;
    }
  EXPECT_LT(r.edge_count(), g.edge_count());
}

TEST(GraphIo, RoundTripOnZoo) {
  for (const auto& z : graph_zoo()) {
    const std::string text = canonical_graph_text(z.config);
    auto doc = parse_graph_document(text);
    EXPECT_EQ(canonical_graph_text(doc), text) << z.name;
    EXPECT_EQ(doc.class_alpha, z.config.class_alpha()) << z.name;
  }
}

TEST(GraphIo, RationalSurvivesExactly) {
  const std::string text = R"({"vertices":[{"id":"a","star":"a"},{"id":"b","star":"b"}],
    "edges":[{"from":"a","to":"b","alpha":"1/3"},{"from":"b","to":"a","alpha":"1/3"}],"start":"a"})";
  auto doc = parse_graph_document(text);
  EXPECT_EQ(doc.class_alpha[0], Rational(1, 3));
  auto again = parse_graph_document(canonical_graph_text(doc));
  EXPECT_EQ(again.class_alpha[0], Rational(1, 3));
  EXPECT_NE(canonical_graph_text(doc).find("\"1/3\""), std::string::npos);
}

TEST(GraphIo, NumericAlphaAndDefault) {
  auto doc = parse_graph_document(R"({"vertices":[{"id":"a","star":"a"},{"id":"b","star":"b"}],
    "edges":[{"from":"a","to":"b","alpha":0.25},{"from":"b","to":"a","alpha":"1/4"}]})");
  EXPECT_EQ(doc.class_alpha[0], Rational(1, 4));
  EXPECT_FALSE(doc.start.has_value());
  auto plain = parse_graph_document(R"({"vertices":[{"id":"a","star":"a"},{"id":"b","star":"b"}],
    "edges":[{"from":"a","to":"b"},{"from":"b","to":"a"}]})");
  EXPECT_EQ(plain.class_alpha[0], 1);
}

TEST(GraphIo, UnknownKeyIsNamed) {
  try {
    parse_graph_document(R"({"vertices":[{"id":"a","star":"a","colour":"red"}],"edges":[]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(GraphIo, SyntaxErrorHasLocation) {
  try {
    parse_graph_document("{\"vertices\": [}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
}
