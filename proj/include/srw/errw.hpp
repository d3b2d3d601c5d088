#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "srw/rng.hpp"
#include "srw/star_graph.hpp"

namespace srw {

// prod_{k=0}^{n-1} (a + m k); empty product is 1.
Rational f_product(const Rational& a, int m, std::uint64_t n);

struct PathRecord {
  std::vector<Index> vertices;
  std::vector<std::uint64_t> edge_counts;   // N_e
  std::vector<std::uint64_t> class_counts;  // sum of N_e over class members
  std::vector<std::uint64_t> departures;    // departures from {i, i*}, stored at pair_rep(i)

  // Throws InvalidPath if consecutive vertices are not joined by an edge.
  static PathRecord from_vertices(const StarGraph& g, std::vector<Index> vertices);
  std::size_t steps() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  Index front() const { return vertices.front(); }
  Index back() const { return vertices.back(); }
};

// Comma-separated vertex ids.
PathRecord parse_path(const StarGraph& g, std::string_view text);
std::string format_path(const StarGraph& g, const PathRecord& p);

class ReinforcedState {
 public:
  explicit ReinforcedState(WeightConfig cfg);

  const WeightConfig& config() const { return cfg_; }
  Index current() const { return current_; }
  std::uint64_t step() const { return step_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  // alpha_e + N_e + N_{e*}
  Rational weight(Index e) const;
  void advance(Index e);

 private:
  WeightConfig cfg_;
  std::vector<std::uint64_t> counts_;
  Index current_;
  std::uint64_t step_ = 0;
};

struct Transition {
  Index edge;
  Index to;
  Rational probability;
};

std::vector<Transition> transition_distribution(const ReinforcedState& state);

PathRecord simulate_errw(const WeightConfig& cfg, std::uint64_t steps, Rng& rng);

// Same dynamics, keeping only the crossing counts (no trajectory storage).
std::vector<std::uint64_t> simulate_errw_counts(const WeightConfig& cfg, std::uint64_t steps, Rng& rng);

Rational path_probability_sequential(const WeightConfig& cfg, const PathRecord& path);

// Floating-point variant; relative error grows roughly linearly with the path length.
double log_path_probability(const WeightConfig& cfg, const PathRecord& path);

// One value per vertex, equal on i and i*.
std::vector<Rational> beta_vector(const WeightConfig& cfg);

Rational path_probability_closed_form(const WeightConfig& cfg, const PathRecord& path, bool allow_loops = false);

WeightConfig posterior_update(const WeightConfig& cfg, const PathRecord& path);

// All paths of exactly `steps` steps from the start vertex with their exact probabilities.
struct WeightedPath {
  std::vector<Index> vertices;
  Rational probability;
};
std::vector<WeightedPath> enumerate_paths(const WeightConfig& cfg, std::size_t steps, std::size_t limit = 1u << 20);

}  // namespace srw
