#include "srw/zoo.hpp"

#include "srw/builders.hpp"

namespace srw {

namespace {

std::shared_ptr<const StarGraph> share(StarGraph g) { return std::make_shared<const StarGraph>(std::move(g)); }

GraphSpec undirected(const std::vector<VertexId>& vs, const std::vector<std::pair<VertexId, VertexId>>& es) {
  GraphSpec spec;
  for (const auto& v : vs) spec.vertices.push_back({v, v});
  for (const auto& [a, b] : es) {
    spec.edges.push_back({a, b});
    spec.edges.push_back({b, a});
  }
  return spec;
}

DirectedGraph three_cycle() { return {{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}}; }

}  // namespace

WeightConfig zoo_triangle(const VertexId& start) {
  auto g = share(StarGraph::build(undirected({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "3"}})));
  return WeightConfig::uniform(g, g->require(start));
}

WeightConfig zoo_path(const VertexId& start) {
  auto g = share(StarGraph::build(undirected({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
  return WeightConfig::uniform(g, g->require(start));
}

WeightConfig zoo_two_cycle() {
  GraphSpec spec;
  spec.vertices = {{"1", "2"}, {"2", "1"}};
  spec.edges = {{"1", "2"}, {"2", "1"}};
  auto g = share(StarGraph::build(spec));
  std::vector<Rational> alpha(g->edge_count());
  alpha[*g->find_edge(g->require("1"), g->require("2"))] = 1;
  alpha[*g->find_edge(g->require("2"), g->require("1"))] = 2;
  return WeightConfig::from_edge_alpha(g, alpha, g->require("1"));
}

WeightConfig zoo_de_bruijn(int k) {
  auto g = share(build_de_bruijn(2, k));
  const VertexId zero(static_cast<std::size_t>(k), '0');
  const Index i0 = g->require(zero);
  std::vector<Rational> alpha(g->class_count(), Rational(1));
  alpha[g->class_of(*g->find_edge(i0, i0))] = 2;
  return {g, alpha, i0};
}

WeightConfig zoo_rwde_doubled() {
  auto g = share(build_rwde(three_cycle(), RwdeMode::Doubled));
  return WeightConfig::uniform(g, g->require("a"));
}

WeightConfig zoo_rwde_glued() {
  auto g = share(build_rwde(three_cycle(), RwdeMode::Glued, "a"));
  return WeightConfig::uniform(g, g->require("a"));
}

WeightConfig zoo_amnesia() {
  auto g = share(build_amnesia(2, 2));
  return WeightConfig::uniform(g, g->require("0"));
}

std::vector<ZooEntry> graph_zoo() {
  std::vector<ZooEntry> out;
  auto add = [&](std::string name, WeightConfig cfg) {
    bool ok = check_divergence_condition(cfg);
    out.push_back({std::move(name), std::move(cfg), ok});
  };
  add("triangle", zoo_triangle());
  add("path", zoo_path());
  add("two_cycle", zoo_two_cycle());
  add("de_bruijn_2_1", zoo_de_bruijn(1));
  add("de_bruijn_2_2", zoo_de_bruijn(2));
  add("rwde_doubled", zoo_rwde_doubled());
  add("rwde_glued", zoo_rwde_glued());
  add("amnesia_2_2", zoo_amnesia());
  return out;
}

}  // namespace srw
