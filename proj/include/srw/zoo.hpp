#pragma once

#include <string>
#include <vector>

#include "srw/star_graph.hpp"

namespace srw {

// Built-in test graphs with a default weight configuration.
struct ZooEntry {
  std::string name;
  WeightConfig config;
  // Divergence condition holds, so the density and its checks apply.
  bool admissible;
};

WeightConfig zoo_triangle(const VertexId& start = "1");   // star = id, alpha = 1
WeightConfig zoo_path(const VertexId& start = "b");       // a - b - c, star = id, alpha = 1
WeightConfig zoo_two_cycle();                             // 1* = 2, alpha_12 = 1, alpha_21 = 2, i0 = 1
WeightConfig zoo_de_bruijn(int k);                        // s = 2, i0 = 0...0, loop at i0 has alpha 2
WeightConfig zoo_rwde_doubled();                          // 3-cycle a -> b -> c -> a
WeightConfig zoo_rwde_glued();                            // glued at a = i0
WeightConfig zoo_amnesia();                               // s = 2, k = 2, i0 = 0

std::vector<ZooEntry> graph_zoo();

}  // namespace srw
