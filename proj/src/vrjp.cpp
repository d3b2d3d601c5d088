#include "srw/vrjp.hpp"

#include <cmath>
#include <random>

namespace srw {

Conductances sample_class_conductances(const WeightConfig& cfg, Rng& rng) {
  Conductances w;
  for (const auto& a : cfg.class_alpha()) {
    std::gamma_distribution<double> gamma(a.get_d(), 1.0);
    w.per_class.push_back(gamma(rng));
  }
  return w;
}

Conductances u_transform(const StarGraph& g, const Conductances& w, const VertexVec& u) {
  EdgeVec x(g.edge_count());
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    x[e] = w.edge(g, e) * std::exp(u[ed.tail] + u[g.star(ed.head)]);
  }
  if (!is_star_symmetric(g, x, 0.0)) throw Error(ErrorCode::OutOfDomain, "u-transform broke class symmetry");
  return {edge_to_class(g, x)};
}

double hazard(double a, double b, double s) { return a * std::expm1(s) + 0.5 * b * std::expm1(2 * s); }

double solve_hazard(double a, double b, double target) {
  if (target <= 0) return 0;
  if (b == 0) return std::log1p(target / a);
  if (a == 0) return 0.5 * std::log1p(2 * target / b);
  // Mixed case: bracket by the single-term bounds, then safeguarded Newton.
  double lo = 0, hi = std::min(std::log1p(target / a), 0.5 * std::log1p(2 * target / b));
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = hazard(a, b, s) - target;
    if (std::abs(f) <= 1e-13) break;
    if (f > 0) hi = s;
    else lo = s;
    double df = a * std::exp(s) + b * std::exp(2 * s);
    double next = s - f / df;
    s = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  return s;
}

HoldingDraw sample_holding_time(const StarGraph& g, const Conductances& w, const LocalTimeState& t, Index i,
                                Rng& rng) {
  auto out = g.out_edges(i);
  if (out.empty()) throw Error(ErrorCode::Sink, "vertex '" + g.id(i) + "' has no out-edge");
  const auto& T = t.local_time;
  double a = 0, b = 0;
  for (Index e : out) {
    Index js = g.star(g.edge(e).head);
    if (js == i) b += w.edge(g, e) * std::exp(2 * T[i]);
    else a += w.edge(g, e) * std::exp(T[i] + T[js]);
  }
  std::exponential_distribution<double> exp1(1.0);
  double target = exp1(rng);
  double s = solve_hazard(a, b, target);

  double total = 0;
  std::vector<double> rate(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    Index e = out[k];
    Index js = g.star(g.edge(e).head);
    rate[k] = w.edge(g, e) * std::exp(T[i] + s) * std::exp(T[js] + (js == i ? s : 0.0));
    total += rate[k];
  }
  double u = uniform_open(rng) * total;
  std::size_t pick = out.size() - 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (u < rate[k]) {
      pick = k;
      break;
    }
    u -= rate[k];
  }
  return {s, out[pick], g.edge(out[pick]).head, std::abs(hazard(a, b, s) - target)};
}

TimedTrajectory simulate_vrjp(const StarGraph& g, const Conductances& w, Index i0, Horizon horizon, Rng& rng) {
  TimedTrajectory tr;
  tr.state = LocalTimeState(g.vertex_count());
  tr.times.push_back(0.0);
  tr.vertices.push_back(i0);
  Index cur = i0;
  for (std::uint64_t n = 0;; ++n) {
    if (!horizon.by_time && n >= horizon.jumps) break;
    HoldingDraw d = sample_holding_time(g, w, tr.state, cur, rng);
    if (horizon.by_time && tr.state.clock + d.sojourn > horizon.time) {
      tr.state.local_time[cur] += horizon.time - tr.state.clock;
      tr.state.clock = horizon.time;
      break;
    }
    tr.max_residual = std::max(tr.max_residual, d.residual);
    tr.state.local_time[cur] += d.sojourn;
    tr.state.clock += d.sojourn;
    cur = d.destination;
    tr.times.push_back(tr.state.clock);
    tr.vertices.push_back(cur);
  }
  return tr;
}

std::vector<Index> annealed_skeleton(const WeightConfig& cfg, std::size_t steps, Rng& rng) {
  auto w = sample_class_conductances(cfg, rng);
  return simulate_vrjp(cfg.graph(), w, cfg.start(), Horizon::jump_count(steps), rng).vertices;
}

}  // namespace srw
