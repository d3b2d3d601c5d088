#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "srw/star_graph.hpp"

namespace srw {

inline constexpr std::size_t kDefaultEdgeCap = std::size_t{1} << 20;

// Letters used for alphabet symbols: 0-9 then a-z.
char alphabet_symbol(int k);

// V = S^k, edges w -> shift(w)+j, star = word reversal.
StarGraph build_de_bruijn(int s, int k, std::size_t edge_cap = kDefaultEdgeCap);

struct DirectedGraph {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

enum class RwdeMode { Doubled, Glued };

// Mirror copies are named "<id>*". Glued mode identifies i0 with its copy.
// The result is checked structurally; the connectivity rule is left to the caller.
StarGraph build_rwde(const DirectedGraph& g1, RwdeMode mode, const VertexId& i0 = {});

// Variable-length histories: forget edges drop the oldest symbol, append edges add one.
StarGraph build_amnesia(int s, int k, std::size_t edge_cap = kDefaultEdgeCap);

enum class PruneComparison { Shorter, AtMost };

// Removes append moves out of words that have a context suffix, together with their
// mirror forget moves; vertices left without edges are dropped.
StarGraph restrict_variable_order(const StarGraph& amnesia, const std::set<std::string>& contexts,
                                  PruneComparison cmp = PruneComparison::Shorter);

// Words of C whose closure partners (reversal, prefix-extensions present in V) are missing.
std::set<std::string> missing_context_words(const StarGraph& amnesia, const std::set<std::string>& contexts);

}  // namespace srw
