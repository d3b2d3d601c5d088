#include "srw/star_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace srw {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << to_string(violations[k].code) << ": " << violations[k].detail;
  }
  return os.str();
}

namespace {

std::vector<bool> reachable_from(const std::vector<std::vector<Index>>& adj, Index s) {
  std::vector<bool> seen(adj.size(), false);
  std::queue<Index> q;
  seen[s] = true;
  q.push(s);
  while (!q.empty()) {
    Index v = q.front();
    q.pop();
    for (Index w : adj[v])
      if (!seen[w]) seen[w] = true, q.push(w);
  }
  return seen;
}

struct Indexed {
  std::vector<VertexId> ids;
  std::map<VertexId, Index> index;
  std::vector<std::optional<Index>> star;
  std::vector<Edge> edges;
};

// Shared front end of validation and construction; appends violations.
Indexed index_spec(const GraphSpec& spec, std::vector<Violation>& out, bool check_connected) {
  Indexed ix;
  std::set<VertexId> seen_ids;
  for (const auto& v : spec.vertices) {
    if (!seen_ids.insert(v.id).second)
      out.push_back({ErrorCode::DuplicateEdge, "vertex '" + v.id + "' listed twice"});
  }
  ix.ids.assign(seen_ids.begin(), seen_ids.end());
  for (Index k = 0; k < ix.ids.size(); ++k) ix.index[ix.ids[k]] = k;

  ix.star.assign(ix.ids.size(), std::nullopt);
  for (const auto& v : spec.vertices) {
    auto it = ix.index.find(v.star);
    if (it == ix.index.end()) {
      out.push_back({ErrorCode::UnknownVertex, "star of '" + v.id + "' is unknown vertex '" + v.star + "'"});
      continue;
    }
    ix.star[ix.index[v.id]] = it->second;
  }
  for (Index k = 0; k < ix.ids.size(); ++k) {
    if (!ix.star[k]) continue;
    Index s = *ix.star[k];
    if (!ix.star[s] || *ix.star[s] != k)
      out.push_back({ErrorCode::NotInvolution, "star(star('" + ix.ids[k] + "')) != '" + ix.ids[k] + "'"});
  }

  std::set<std::pair<Index, Index>> arcs;
  for (const auto& a : spec.edges) {
    auto t = ix.index.find(a.from), h = ix.index.find(a.to);
    if (t == ix.index.end() || h == ix.index.end()) {
      out.push_back({ErrorCode::UnknownVertex,
                     "edge (" + a.from + "," + a.to + ") has an unknown endpoint"});
      continue;
    }
    if (!arcs.insert({t->second, h->second}).second)
      out.push_back({ErrorCode::DuplicateEdge, "edge (" + a.from + "," + a.to + ") listed twice"});
  }
  for (auto [t, h] : arcs) ix.edges.push_back({t, h});

  bool involution_ok = true;
  for (Index k = 0; k < ix.ids.size(); ++k)
    if (!ix.star[k] || *ix.star[*ix.star[k]] != k) involution_ok = false;
  if (!involution_ok) return ix;

  for (auto [t, h] : arcs) {
    Index mt = *ix.star[h], mh = *ix.star[t];
    if (!arcs.count({mt, mh}))
      out.push_back({ErrorCode::MissingMirrorEdge, "edge (" + ix.ids[t] + "," + ix.ids[h] +
                                                       ") lacks its mirror (" + ix.ids[mt] + "," +
                                                       ix.ids[mh] + ")"});
  }

  if (check_connected && !ix.ids.empty()) {
    std::vector<std::vector<Index>> adj(ix.ids.size());
    for (auto [t, h] : arcs) adj[t].push_back(h);
    for (Index i = 0; i < ix.ids.size(); ++i) {
      auto seen = reachable_from(adj, i);
      for (Index j = 0; j < ix.ids.size(); ++j) {
        if (!seen[j] && !seen[*ix.star[j]]) {
          out.push_back({ErrorCode::NotConnected, "no path from '" + ix.ids[i] + "' to '" + ix.ids[j] +
                                                      "' or to '" + ix.ids[*ix.star[j]] + "'"});
          break;
        }
      }
    }
  }
  return ix;
}

}  // namespace

ValidationReport validate_star_graph(const GraphSpec& spec) {
  ValidationReport r;
  index_spec(spec, r.violations, true);
  return r;
}

StarGraph StarGraph::build(const GraphSpec& spec, bool require_connected) {
  std::vector<Violation> violations;
  Indexed ix = index_spec(spec, violations, require_connected);
  if (!violations.empty()) {
    ValidationReport r{violations};
    throw Error(violations.front().code, r.summary());
  }

  StarGraph g;
  g.ids_ = std::move(ix.ids);
  const std::size_t n = g.ids_.size();
  g.star_.resize(n);
  g.kind_.resize(n);
  for (Index v = 0; v < n; ++v) {
    g.star_[v] = *ix.star[v];
    if (g.star_[v] == v) {
      g.kind_[v] = VertexKind::Fixed;
      g.v0_.push_back(v);
    } else if (v < g.star_[v]) {
      g.kind_[v] = VertexKind::Rep;
      g.v1_.push_back(v);
    } else {
      g.kind_[v] = VertexKind::Mirror;
      g.v1_star_.push_back(v);
    }
  }

  g.edges_ = std::move(ix.edges);
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  for (Index e = 0; e < g.edges_.size(); ++e) {
    g.out_[g.edges_[e].tail].push_back(e);
    g.in_[g.edges_[e].head].push_back(e);
  }
  g.mirror_.resize(g.edges_.size());
  for (Index e = 0; e < g.edges_.size(); ++e) {
    const Edge& x = g.edges_[e];
    g.mirror_[e] = *g.find_edge(g.star_[x.head], g.star_[x.tail]);
  }
  g.class_of_.assign(g.edges_.size(), 0);
  for (Index e = 0; e < g.edges_.size(); ++e) {
    Index m = g.mirror_[e];
    if (m < e) {
      g.class_of_[e] = g.class_of_[m];
      continue;
    }
    EdgeClass c;
    c.representative = e;
    c.self_paired = m == e;
    c.members = c.self_paired ? std::vector<Index>{e} : std::vector<Index>{e, m};
    g.class_of_[e] = g.classes_.size();
    g.classes_.push_back(std::move(c));
  }
  return g;
}

std::optional<Index> StarGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

Index StarGraph::require(std::string_view id) const {
  auto v = find(id);
  if (!v) throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(id) + "'");
  return *v;
}

std::optional<Index> StarGraph::find_edge(Index tail, Index head) const {
  for (Index e : out_[tail])
    if (edges_[e].head == head) return e;
  return std::nullopt;
}

bool StarGraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.tail == e.head; });
}

std::size_t StarGraph::self_paired_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes_.begin(), classes_.end(), [](const EdgeClass& c) { return c.self_paired; }));
}

std::string StarGraph::edge_label(Index e) const {
  return "(" + ids_[edges_[e].tail] + "," + ids_[edges_[e].head] + ")";
}

GraphSpec StarGraph::to_spec() const {
  GraphSpec s;
  for (Index v = 0; v < ids_.size(); ++v) s.vertices.push_back({ids_[v], ids_[star_[v]]});
  for (const auto& e : edges_) s.edges.push_back({ids_[e.tail], ids_[e.head]});
  return s;
}

namespace {
std::vector<std::vector<Index>> adjacency(const StarGraph& g) {
  std::vector<std::vector<Index>> adj(g.vertex_count());
  for (const auto& e : g.edges()) adj[e.tail].push_back(e.head);
  return adj;
}
}  // namespace

bool is_strongly_connected(const StarGraph& g) {
  auto adj = adjacency(g);
  for (Index i = 0; i < g.vertex_count(); ++i) {
    auto seen = reachable_from(adj, i);
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

bool is_star_connected(const StarGraph& g) {
  auto adj = adjacency(g);
  for (Index i = 0; i < g.vertex_count(); ++i) {
    auto seen = reachable_from(adj, i);
    for (Index j = 0; j < g.vertex_count(); ++j)
      if (!seen[j] && !seen[g.star(j)]) return false;
  }
  return true;
}

EdgeVec star_symmetrize(const StarGraph& g, const EdgeVec& x) {
  EdgeVec y(x.size());
  for (Index e = 0; e < x.size(); ++e) y[e] = 0.5 * (x[e] + x[g.mirror(e)]);
  return y;
}

WeightConfig::WeightConfig(std::shared_ptr<const StarGraph> graph, std::vector<Rational> class_alpha,
                           Index start)
    : graph_(std::move(graph)), alpha_(std::move(class_alpha)), start_(start) {
  if (alpha_.size() != graph_->class_count())
    throw Error(ErrorCode::OutOfDomain, "alpha must have one entry per edge class");
  for (Index c = 0; c < alpha_.size(); ++c)
    if (alpha_[c] <= 0)
      throw Error(ErrorCode::OutOfDomain,
                  "alpha on " + graph_->edge_label(graph_->edge_class(c).representative) + " is not positive");
  if (start_ >= graph_->vertex_count()) throw Error(ErrorCode::UnknownVertex, "start vertex out of range");
}

WeightConfig WeightConfig::from_edge_alpha(std::shared_ptr<const StarGraph> graph,
                                           const std::vector<Rational>& edge_alpha, Index start) {
  for (Index e = 0; e < graph->edge_count(); ++e)
    if (edge_alpha[e] != edge_alpha[graph->mirror(e)])
      throw Error(ErrorCode::OutOfDomain, "alpha differs on " + graph->edge_label(e) + " and its mirror " +
                                              graph->edge_label(graph->mirror(e)));
  auto per_class = edge_to_class(*graph, edge_alpha);
  return {std::move(graph), std::move(per_class), start};
}

WeightConfig WeightConfig::uniform(std::shared_ptr<const StarGraph> graph, Index start) {
  std::vector<Rational> a(graph->class_count(), Rational(1));
  return {std::move(graph), std::move(a), start};
}

std::vector<double> WeightConfig::edge_alpha_double() const {
  std::vector<double> a(graph_->edge_count());
  for (Index e = 0; e < a.size(); ++e) a[e] = alpha(e).get_d();
  return a;
}

std::vector<double> WeightConfig::class_alpha_double() const {
  std::vector<double> a(alpha_.size());
  for (Index c = 0; c < a.size(); ++c) a[c] = alpha_[c].get_d();
  return a;
}

bool check_divergence_condition(const WeightConfig& cfg) {
  const auto& g = cfg.graph();
  auto d = divergence(g, cfg.edge_alpha());
  Index i0 = cfg.start(), i0s = g.star(i0);
  for (Index i = 0; i < g.vertex_count(); ++i) {
    int target = (i == i0s ? 1 : 0) - (i == i0 ? 1 : 0);
    if (d[i] != target) return false;
  }
  return true;
}

void require_divergence_condition(const WeightConfig& cfg) {
  if (!check_divergence_condition(cfg))
    throw Error(ErrorCode::DivergenceConditionViolated,
                "div(alpha) != delta_{i0*} - delta_{i0} for i0 = '" + cfg.graph().id(cfg.start()) + "'");
}

}  // namespace srw
