#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/star_graph.hpp"
#include "srw/vrjp.hpp"

namespace srw {

// Graph file contents: the graph, per-class alpha (default 1) and an optional start vertex.
struct GraphDocument {
  std::shared_ptr<const StarGraph> graph;
  std::vector<Rational> class_alpha;
  std::optional<Index> start;

  // Throws InvalidPath when neither the document nor the override names a start vertex.
  WeightConfig config(const std::optional<VertexId>& start_override = {}) const;
};

// Throws ParseError (with byte offset or offending key) or the graph's own validation error.
GraphDocument parse_graph_document(const std::string& text);
GraphDocument read_graph_file(const std::string& path);

// Canonical form: vertices and edges sorted, every alpha written as "p/q".
nlohmann::json graph_document_json(const StarGraph& g, const std::vector<Rational>& class_alpha,
                                   std::optional<Index> start);
std::string canonical_graph_text(const StarGraph& g, const std::vector<Rational>& class_alpha,
                                 std::optional<Index> start);
inline std::string canonical_graph_text(const GraphDocument& d) {
  return canonical_graph_text(*d.graph, d.class_alpha, d.start);
}
inline std::string canonical_graph_text(const WeightConfig& cfg) {
  return canonical_graph_text(cfg.graph(), cfg.class_alpha(), cfg.start());
}

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// CSV with header step,vertex.
void write_path_csv(std::ostream& os, const StarGraph& g, const std::vector<Index>& vertices);
// CSV with header time,vertex.
void write_timed_csv(std::ostream& os, const StarGraph& g, const TimedTrajectory& t);

}  // namespace srw
