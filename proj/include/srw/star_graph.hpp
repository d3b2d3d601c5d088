#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srw/error.hpp"
#include "srw/rational.hpp"

namespace srw {

using VertexId = std::string;
using Index = std::size_t;

struct Edge {
  Index tail;
  Index head;
};

// Unvalidated description of a graph with a vertex involution, keyed by id.
struct GraphSpec {
  struct Vertex {
    VertexId id;
    VertexId star;
  };
  struct Arc {
    VertexId from;
    VertexId to;
  };
  std::vector<Vertex> vertices;
  std::vector<Arc> edges;
};

struct Violation {
  ErrorCode code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Reports every violation: involution, mirror edges, duplicates, unknown
// endpoints and the weak connectivity rule (path from i to j or to j*).
ValidationReport validate_star_graph(const GraphSpec& spec);

enum class VertexKind { Fixed, Rep, Mirror };

struct EdgeClass {
  std::vector<Index> members;  // one or two edges, ascending
  Index representative;        // lexicographically smallest member
  bool self_paired;
};

// Immutable graph with involution. Vertices are sorted by id and edges by
// (tail, head), so indices are canonical.
class StarGraph {
 public:
  static StarGraph build(const GraphSpec& spec, bool require_connected = true);

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t class_count() const { return classes_.size(); }

  const VertexId& id(Index v) const { return ids_[v]; }
  std::optional<Index> find(std::string_view id) const;
  Index require(std::string_view id) const;  // throws UnknownVertex
  Index star(Index v) const { return star_[v]; }
  VertexKind kind(Index v) const { return kind_[v]; }
  // Representative of the pair {v, v*}: v for V0 and V1, v* for V1*.
  Index pair_rep(Index v) const { return kind_[v] == VertexKind::Mirror ? star_[v] : v; }

  const std::vector<Index>& v0() const { return v0_; }
  const std::vector<Index>& v1() const { return v1_; }
  const std::vector<Index>& v1_star() const { return v1_star_; }

  const Edge& edge(Index e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<Index> find_edge(Index tail, Index head) const;
  Index mirror(Index e) const { return mirror_[e]; }
  bool is_loop(Index e) const { return edges_[e].tail == edges_[e].head; }
  bool has_loops() const;

  Index class_of(Index e) const { return class_of_[e]; }
  const EdgeClass& edge_class(Index c) const { return classes_[c]; }
  const std::vector<EdgeClass>& classes() const { return classes_; }
  std::size_t self_paired_count() const;

  std::span<const Index> out_edges(Index v) const { return out_[v]; }
  std::span<const Index> in_edges(Index v) const { return in_[v]; }

  std::string edge_label(Index e) const;
  GraphSpec to_spec() const;

 private:
  std::vector<VertexId> ids_;
  std::vector<Index> star_;
  std::vector<VertexKind> kind_;
  std::vector<Index> v0_, v1_, v1_star_;
  std::vector<Edge> edges_;
  std::vector<Index> mirror_;
  std::vector<Index> class_of_;
  std::vector<EdgeClass> classes_;
  std::vector<std::vector<Index>> out_, in_;
};

bool is_strongly_connected(const StarGraph& g);
bool is_star_connected(const StarGraph& g);

// ---- edge and vertex vectors -------------------------------------------

using EdgeVec = std::vector<double>;
using VertexVec = std::vector<double>;

namespace detail {
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline bool near(const Rational& a, const Rational& b, double) { return a == b; }
inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace detail

template <class T>
std::vector<T> out_sums(const StarGraph& g, const std::vector<T>& x) {
  std::vector<T> s(g.vertex_count(), T(0));
  for (Index e = 0; e < g.edge_count(); ++e) s[g.edge(e).tail] += x[e];
  return s;
}

template <class T>
std::vector<T> in_sums(const StarGraph& g, const std::vector<T>& x) {
  std::vector<T> s(g.vertex_count(), T(0));
  for (Index e = 0; e < g.edge_count(); ++e) s[g.edge(e).head] += x[e];
  return s;
}

// y_i^<-> = y_i^-> + y_{i*}^->
template <class T>
std::vector<T> pair_sums(const StarGraph& g, const std::vector<T>& x) {
  auto o = out_sums(g, x);
  std::vector<T> s(g.vertex_count());
  for (Index v = 0; v < g.vertex_count(); ++v) s[v] = o[v] + o[g.star(v)];
  return s;
}

template <class T>
std::vector<T> divergence(const StarGraph& g, const std::vector<T>& x) {
  std::vector<T> d(g.vertex_count(), T(0));
  for (Index e = 0; e < g.edge_count(); ++e) {
    d[g.edge(e).tail] += x[e];
    d[g.edge(e).head] -= x[e];
  }
  return d;
}

template <class T>
bool is_star_symmetric(const StarGraph& g, const std::vector<T>& x, double tol = 0.0) {
  for (Index e = 0; e < g.edge_count(); ++e)
    if (!detail::near(x[e], x[g.mirror(e)], tol)) return false;
  return true;
}

template <class T>
bool is_divergence_free(const StarGraph& g, const std::vector<T>& x, double tol = 0.0) {
  for (const auto& d : divergence(g, x))
    if (!detail::near(d, T(0), tol)) return false;
  return true;
}

template <class T>
bool is_positive(const std::vector<T>& x) {
  for (const auto& v : x)
    if (!(v > 0)) return false;
  return true;
}

struct EdgeFlags {
  bool in_h;
  bool divergence_free;
  bool positive;
};

template <class T>
EdgeFlags edge_flags(const StarGraph& g, const std::vector<T>& x, double tol = 0.0) {
  return {is_star_symmetric(g, x, tol), is_divergence_free(g, x, tol), is_positive(x)};
}

// Expand a per-class vector to a per-edge vector (lands in H by construction).
template <class T>
std::vector<T> class_to_edge(const StarGraph& g, const std::vector<T>& per_class) {
  std::vector<T> x(g.edge_count());
  for (Index e = 0; e < g.edge_count(); ++e) x[e] = per_class[g.class_of(e)];
  return x;
}

template <class T>
std::vector<T> edge_to_class(const StarGraph& g, const std::vector<T>& x) {
  std::vector<T> c(g.class_count());
  for (Index k = 0; k < g.class_count(); ++k) c[k] = x[g.edge_class(k).representative];
  return c;
}

EdgeVec star_symmetrize(const StarGraph& g, const EdgeVec& x);

// ---- weights --------------------------------------------------------------

class WeightConfig {
 public:
  WeightConfig(std::shared_ptr<const StarGraph> graph, std::vector<Rational> class_alpha, Index start);

  // Per-edge input; rejects alpha_e != alpha_{e*}.
  static WeightConfig from_edge_alpha(std::shared_ptr<const StarGraph> graph,
                                      const std::vector<Rational>& edge_alpha, Index start);
  static WeightConfig uniform(std::shared_ptr<const StarGraph> graph, Index start);

  const StarGraph& graph() const { return *graph_; }
  const std::shared_ptr<const StarGraph>& graph_ptr() const { return graph_; }
  const std::vector<Rational>& class_alpha() const { return alpha_; }
  const Rational& alpha(Index e) const { return alpha_[graph_->class_of(e)]; }
  std::vector<Rational> edge_alpha() const { return class_to_edge(*graph_, alpha_); }
  std::vector<double> edge_alpha_double() const;
  std::vector<double> class_alpha_double() const;
  Index start() const { return start_; }

  WeightConfig with_start(Index start) const { return {graph_, alpha_, start}; }
  WeightConfig with_class_alpha(std::vector<Rational> alpha) const { return {graph_, std::move(alpha), start_}; }

 private:
  std::shared_ptr<const StarGraph> graph_;
  std::vector<Rational> alpha_;
  Index start_;
};

// div(alpha)(i) = 1_{i = i0*} - 1_{i = i0}, exactly.
bool check_divergence_condition(const WeightConfig& cfg);
void require_divergence_condition(const WeightConfig& cfg);

}  // namespace srw
