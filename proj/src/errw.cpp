#include "srw/errw.hpp"

#include <cmath>
#include <sstream>

namespace srw {

Rational f_product(const Rational& a, int m, std::uint64_t n) {
  Rational p = 1;
  for (std::uint64_t k = 0; k < n; ++k) p *= a + Rational(m) * Rational(static_cast<unsigned long>(k));
  return p;
}

PathRecord PathRecord::from_vertices(const StarGraph& g, std::vector<Index> vertices) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidPath, "empty path");
  PathRecord p;
  p.edge_counts.assign(g.edge_count(), 0);
  p.class_counts.assign(g.class_count(), 0);
  p.departures.assign(g.vertex_count(), 0);
  for (Index v : vertices)
    if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidPath, "vertex index out of range");
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    auto e = g.find_edge(vertices[k], vertices[k + 1]);
    if (!e)
      throw Error(ErrorCode::InvalidPath,
                  "no edge (" + g.id(vertices[k]) + "," + g.id(vertices[k + 1]) + ") at step " + std::to_string(k));
    ++p.edge_counts[*e];
    ++p.class_counts[g.class_of(*e)];
    ++p.departures[g.pair_rep(vertices[k])];
  }
  p.vertices = std::move(vertices);
  return p;
}

PathRecord parse_path(const StarGraph& g, std::string_view text) {
  std::vector<Index> vs;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    auto v = g.find(item);
    if (!v) throw Error(ErrorCode::InvalidPath, "unknown vertex '" + item + "' in path");
    vs.push_back(*v);
  }
  return PathRecord::from_vertices(g, std::move(vs));
}

std::string format_path(const StarGraph& g, const PathRecord& p) {
  std::string s;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) s += (k ? "," : "") + g.id(p.vertices[k]);
  return s;
}

ReinforcedState::ReinforcedState(WeightConfig cfg)
    : cfg_(std::move(cfg)), counts_(cfg_.graph().edge_count(), 0), current_(cfg_.start()) {}

Rational ReinforcedState::weight(Index e) const {
  const auto& g = cfg_.graph();
  Index m = g.mirror(e);
  return cfg_.alpha(e) + Rational(static_cast<unsigned long>(counts_[e] + counts_[m]));
}

void ReinforcedState::advance(Index e) {
  if (cfg_.graph().edge(e).tail != current_) throw Error(ErrorCode::InvalidPath, "edge does not leave the current vertex");
  ++counts_[e];
  current_ = cfg_.graph().edge(e).head;
  ++step_;
}

std::vector<Transition> transition_distribution(const ReinforcedState& s) {
  const auto& g = s.config().graph();
  auto out = g.out_edges(s.current());
  if (out.empty()) throw Error(ErrorCode::Sink, "vertex '" + g.id(s.current()) + "' has no out-edge");
  std::vector<Transition> t;
  Rational total = 0;
  for (Index e : out) {
    t.push_back({e, g.edge(e).head, s.weight(e)});
    total += t.back().probability;
  }
  for (auto& x : t) x.probability /= total;
  return t;
}

namespace {

// Floating-point walk; calls visit(edge) after each step.
template <class Visit>
void run_errw(const WeightConfig& cfg, std::uint64_t steps, Rng& rng, Visit&& visit) {
  const auto& g = cfg.graph();
  std::vector<double> w = cfg.edge_alpha_double();
  Index cur = cfg.start();
  for (std::uint64_t n = 0; n < steps; ++n) {
    auto out = g.out_edges(cur);
    if (out.empty()) throw Error(ErrorCode::Sink, "vertex '" + g.id(cur) + "' has no out-edge");
    double total = 0;
    for (Index e : out) total += w[e];
    double u = uniform_open(rng) * total;
    Index chosen = out.back();
    for (Index e : out) {
      if (u < w[e]) {
        chosen = e;
        break;
      }
      u -= w[e];
    }
    w[chosen] += 1.0;
    Index m = g.mirror(chosen);
    if (m != chosen) w[m] += 1.0;
    else w[chosen] += 1.0;
    cur = g.edge(chosen).head;
    visit(chosen);
  }
}

}  // namespace

PathRecord simulate_errw(const WeightConfig& cfg, std::uint64_t steps, Rng& rng) {
  const auto& g = cfg.graph();
  std::vector<Index> vs{cfg.start()};
  vs.reserve(steps + 1);
  run_errw(cfg, steps, rng, [&](Index e) { vs.push_back(g.edge(e).head); });
  return PathRecord::from_vertices(g, std::move(vs));
}

std::vector<std::uint64_t> simulate_errw_counts(const WeightConfig& cfg, std::uint64_t steps, Rng& rng) {
  std::vector<std::uint64_t> n(cfg.graph().edge_count(), 0);
  run_errw(cfg, steps, rng, [&](Index e) { ++n[e]; });
  return n;
}

Rational path_probability_sequential(const WeightConfig& cfg, const PathRecord& path) {
  const auto& g = cfg.graph();
  if (path.front() != cfg.start()) throw Error(ErrorCode::InvalidPath, "path does not start at i0");
  ReinforcedState s(cfg);
  Rational p = 1;
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    Index e = *g.find_edge(path.vertices[k], path.vertices[k + 1]);
    Rational total = 0;
    for (Index f : g.out_edges(s.current())) total += s.weight(f);
    p *= s.weight(e) / total;
    s.advance(e);
  }
  return p;
}

double log_path_probability(const WeightConfig& cfg, const PathRecord& path) {
  const auto& g = cfg.graph();
  if (path.front() != cfg.start()) throw Error(ErrorCode::InvalidPath, "path does not start at i0");
  std::vector<double> w = cfg.edge_alpha_double();
  double lp = 0;
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    Index e = *g.find_edge(path.vertices[k], path.vertices[k + 1]);
    double total = 0;
    for (Index f : g.out_edges(path.vertices[k])) total += w[f];
    lp += std::log(w[e] / total);
    w[e] += 1.0;
    w[g.mirror(e)] += 1.0;  // self-paired: same slot twice
  }
  return lp;
}

std::vector<Rational> beta_vector(const WeightConfig& cfg) {
  require_divergence_condition(cfg);
  const auto& g = cfg.graph();
  auto both = pair_sums(g, cfg.edge_alpha());
  Index i0 = cfg.start(), i0s = g.star(i0);
  std::vector<Rational> beta(g.vertex_count());
  for (Index i = 0; i < g.vertex_count(); ++i) {
    int fixed = g.star(i) == i ? 2 : 1;
    int away = (i != i0 && i != i0s) ? 2 : 1;
    beta[i] = (both[i] + fixed * away) / 2 - 1;
  }
  return beta;
}

Rational path_probability_closed_form(const WeightConfig& cfg, const PathRecord& path, bool allow_loops) {
  const auto& g = cfg.graph();
  if (!allow_loops && g.has_loops())
    throw Error(ErrorCode::OutOfDomain, "graph has self-loops; the closed form needs allow_loops");
  if (path.front() != cfg.start()) throw Error(ErrorCode::InvalidPath, "path does not start at i0");
  auto beta = beta_vector(cfg);
  Rational num = 1, den = 1;
  for (Index c = 0; c < g.class_count(); ++c)
    num *= f_product(cfg.class_alpha()[c], g.edge_class(c).self_paired ? 2 : 1, path.class_counts[c]);
  for (Index i : g.v0()) den *= f_product(beta[i], 2, path.departures[i]);
  for (Index i : g.v1()) den *= f_product(beta[i], 1, path.departures[i]);
  return num / den;
}

WeightConfig posterior_update(const WeightConfig& cfg, const PathRecord& path) {
  const auto& g = cfg.graph();
  if (path.front() != cfg.start()) throw Error(ErrorCode::InvalidPath, "path does not start at i0");
  auto alpha = cfg.class_alpha();
  for (Index c = 0; c < g.class_count(); ++c)
    alpha[c] += Rational(static_cast<unsigned long>(path.class_counts[c] * (g.edge_class(c).self_paired ? 2 : 1)));
  return WeightConfig(cfg.graph_ptr(), std::move(alpha), path.back());
}

std::vector<WeightedPath> enumerate_paths(const WeightConfig& cfg, std::size_t steps, std::size_t limit) {
  std::vector<WeightedPath> out;
  std::vector<Index> prefix{cfg.start()};
  auto rec = [&](auto&& self, const ReinforcedState& s, const Rational& p) -> void {
    if (prefix.size() == steps + 1) {
      if (out.size() >= limit) throw Error(ErrorCode::SizeLimit, "too many paths to enumerate");
      out.push_back({prefix, p});
      return;
    }
    for (const auto& t : transition_distribution(s)) {
      ReinforcedState next = s;
      next.advance(t.edge);
      prefix.push_back(t.to);
      self(self, next, p * t.probability);
      prefix.pop_back();
    }
  };
  rec(rec, ReinforcedState(cfg), Rational(1));
  return out;
}

}  // namespace srw
