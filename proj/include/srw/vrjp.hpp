#pragma once

#include <cstdint>
#include <vector>

#include "srw/rng.hpp"
#include "srw/star_graph.hpp"

namespace srw {

// One conductance per edge class, shared by e and e*.
struct Conductances {
  std::vector<double> per_class;

  double edge(const StarGraph& g, Index e) const { return per_class[g.class_of(e)]; }
  EdgeVec edge_vector(const StarGraph& g) const { return class_to_edge(g, per_class); }
};

// Independent Gamma(alpha_c, 1) per class.
Conductances sample_class_conductances(const WeightConfig& cfg, Rng& rng);

// W^u_{ij} = W_{ij} exp(u_i + u_{j*}), evaluated on every edge; throws if the
// result were to break class symmetry.
Conductances u_transform(const StarGraph& g, const Conductances& w, const VertexVec& u);

struct LocalTimeState {
  std::vector<double> local_time;
  double clock = 0;

  explicit LocalTimeState(std::size_t n = 0) : local_time(n, 0.0) {}
};

// Smallest s >= 0 with a (e^s - 1) + b (e^{2s} - 1)/2 = target, a, b >= 0, a + b > 0.
double solve_hazard(double a, double b, double target);
double hazard(double a, double b, double s);

struct HoldingDraw {
  double sojourn;
  Index edge;
  Index destination;
  double residual;  // |Lambda(s) - e|
};

HoldingDraw sample_holding_time(const StarGraph& g, const Conductances& w, const LocalTimeState& t, Index i,
                                Rng& rng);

struct Horizon {
  bool by_time = false;
  std::uint64_t jumps = 0;
  double time = 0;

  static Horizon jump_count(std::uint64_t n) { return {false, n, 0.0}; }
  static Horizon until(double t) { return {true, 0, t}; }
};

struct TimedTrajectory {
  std::vector<double> times;     // times[0] = 0 is the start, then jump times
  std::vector<Index> vertices;   // state entered at times[k]
  LocalTimeState state;          // local times at the end of the horizon
  double max_residual = 0;

  const std::vector<Index>& skeleton() const { return vertices; }
};

TimedTrajectory simulate_vrjp(const StarGraph& g, const Conductances& w, Index i0, Horizon horizon, Rng& rng);

// Gamma conductances, then `steps` jumps of the VRJP; returns steps + 1 states.
std::vector<Index> annealed_skeleton(const WeightConfig& cfg, std::size_t steps, Rng& rng);

}  // namespace srw
