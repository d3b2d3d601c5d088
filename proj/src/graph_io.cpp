#include "srw/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace srw {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw Error(ErrorCode::ParseError, where + ": unknown key \"" + key + "\"");
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::ParseError, where + ": missing key \"" + key + "\"");
  if (!it->is_string()) throw Error(ErrorCode::ParseError, where + ": \"" + key + "\" must be a string");
  return it->get<std::string>();
}

Rational get_alpha(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return rational_from_double(v.get<double>());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, where + ": bad alpha (" + e.what() + ")");
  }
  throw Error(ErrorCode::ParseError, where + ": alpha must be a string or number");
}

}  // namespace

WeightConfig GraphDocument::config(const std::optional<VertexId>& start_override) const {
  Index s;
  if (start_override)
    s = graph->require(*start_override);
  else if (start)
    s = *start;
  else
    throw Error(ErrorCode::InvalidPath, "no start vertex given");
  return {graph, class_alpha, s};
}

GraphDocument parse_graph_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  check_keys(doc, {"vertices", "edges", "start"}, "document");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error(ErrorCode::ParseError, "document: \"vertices\" must be an array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw Error(ErrorCode::ParseError, "document: \"edges\" must be an array");

  GraphSpec spec;
  for (std::size_t k = 0; k < doc["vertices"].size(); ++k) {
    const auto& v = doc["vertices"][k];
    const std::string where = "vertices[" + std::to_string(k) + "]";
    check_keys(v, {"id", "star"}, where);
    spec.vertices.push_back({get_string(v, "id", where), get_string(v, "star", where)});
  }
  std::vector<Rational> alpha_in;
  for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
    const auto& e = doc["edges"][k];
    const std::string where = "edges[" + std::to_string(k) + "]";
    check_keys(e, {"from", "to", "alpha"}, where);
    spec.edges.push_back({get_string(e, "from", where), get_string(e, "to", where)});
    alpha_in.push_back(e.contains("alpha") ? get_alpha(e["alpha"], where) : Rational(1));
  }

  auto g = std::make_shared<const StarGraph>(StarGraph::build(spec));
  std::vector<Rational> edge_alpha(g->edge_count());
  for (std::size_t k = 0; k < spec.edges.size(); ++k) {
    Index e = *g->find_edge(g->require(spec.edges[k].from), g->require(spec.edges[k].to));
    edge_alpha[e] = alpha_in[k];
  }
  GraphDocument out;
  out.graph = g;
  if (doc.contains("start")) {
    if (!doc["start"].is_string()) throw Error(ErrorCode::ParseError, "document: \"start\" must be a string");
    out.start = g->require(doc["start"].get<std::string>());
  }
  // from_edge_alpha validates alpha_e = alpha_{e*} and positivity.
  out.class_alpha = WeightConfig::from_edge_alpha(g, edge_alpha, out.start.value_or(0)).class_alpha();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

GraphDocument read_graph_file(const std::string& path) {
  try {
    return parse_graph_document(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw Error(ErrorCode::ParseError, path + ": " + e.what());
    throw;
  }
}

nlohmann::json graph_document_json(const StarGraph& g, const std::vector<Rational>& class_alpha,
                                   std::optional<Index> start) {
  // StarGraph already keeps vertices sorted by id and edges by (tail, head).
  json doc;
  doc["vertices"] = json::array();
  for (Index v = 0; v < g.vertex_count(); ++v) doc["vertices"].push_back({{"id", g.id(v)}, {"star", g.id(g.star(v))}});
  doc["edges"] = json::array();
  for (Index e = 0; e < g.edge_count(); ++e)
    doc["edges"].push_back({{"from", g.id(g.edge(e).tail)},
                            {"to", g.id(g.edge(e).head)},
                            {"alpha", format_rational(class_alpha[g.class_of(e)])}});
  if (start) doc["start"] = g.id(*start);
  return doc;
}

std::string canonical_graph_text(const StarGraph& g, const std::vector<Rational>& class_alpha,
                                 std::optional<Index> start) {
  return graph_document_json(g, class_alpha, start).dump(2) + "\n";
}

void write_path_csv(std::ostream& os, const StarGraph& g, const std::vector<Index>& vertices) {
  os << "step,vertex\n";
  for (std::size_t k = 0; k < vertices.size(); ++k) os << k << ',' << g.id(vertices[k]) << '\n';
}

void write_timed_csv(std::ostream& os, const StarGraph& g, const TimedTrajectory& t) {
  os << "time,vertex\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < t.vertices.size(); ++k) os << t.times[k] << ',' << g.id(t.vertices[k]) << '\n';
}

}  // namespace srw
