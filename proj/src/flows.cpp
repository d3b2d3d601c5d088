#include "srw/flows.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <numeric>

namespace srw {

// ---- quotient graph -------------------------------------------------------

QuotientGraph build_quotient_graph(const StarGraph& g) {
  QuotientGraph q;
  q.node_of.assign(g.vertex_count(), 0);
  for (Index v = 0; v < g.vertex_count(); ++v) {
    if (g.kind(v) == VertexKind::Fixed) continue;
    q.node_of[v] = q.labels.size();
    q.labels.push_back(g.id(v));
  }
  q.has_delta = !g.v0().empty();
  if (q.has_delta) {
    Index delta = q.labels.size();
    q.labels.push_back("delta");
    for (Index v : g.v0()) q.node_of[v] = delta;
  }
  for (Index e = 0; e < g.edge_count(); ++e) {
    q.edges.push_back({q.node_of[g.edge(e).tail], q.node_of[g.edge(e).head]});
    q.back_map.push_back(e);
  }
  return q;
}

// ---- exact flow structure -------------------------------------------------

exact::Matrix div_matrix(const StarGraph& g) {
  exact::Matrix m(g.vertex_count(), g.class_count());
  for (Index c = 0; c < g.class_count(); ++c)
    for (Index e : g.edge_class(c).members) {
      m(g.edge(e).tail, c) += 1;
      m(g.edge(e).head, c) -= 1;
    }
  return m;
}

std::vector<Rational> class_mass(const StarGraph& g) {
  std::vector<Rational> m(g.class_count());
  for (Index c = 0; c < g.class_count(); ++c) m[c] = static_cast<long>(g.edge_class(c).members.size());
  return m;
}

exact::Matrix div_mass_matrix(const StarGraph& g) {
  auto d = div_matrix(g);
  exact::Matrix m(d.rows() + 1, d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = d(i, j);
  auto mass = class_mass(g);
  for (std::size_t j = 0; j < d.cols(); ++j) m(d.rows(), j) = mass[j];
  return m;
}

std::size_t dim_l(const StarGraph& g) { return g.class_count() - exact::rank(div_matrix(g)); }
std::size_t dim_l0(const StarGraph& g) { return g.class_count() - exact::rank(div_mass_matrix(g)); }

std::optional<std::vector<std::vector<Rational>>> dual_vectors(const StarGraph& g, FlowSpace space,
                                                               const std::vector<Index>& coords) {
  exact::Matrix m = space == FlowSpace::L ? div_matrix(g) : div_mass_matrix(g);
  const std::size_t n = g.class_count();
  if (coords.size() != n - exact::rank(m)) return std::nullopt;
  std::vector<bool> in(n, false);
  for (Index c : coords) {
    if (c >= n || in[c]) return std::nullopt;
    in[c] = true;
  }
  std::vector<Index> comp;
  for (Index c = 0; c < n; ++c)
    if (!in[c]) comp.push_back(c);
  exact::Matrix mc = m.columns(comp);
  if (exact::rank(mc) != comp.size()) return std::nullopt;

  std::vector<std::vector<Rational>> out;
  for (Index a : coords) {
    std::vector<Rational> rhs(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rhs[i] = -m(i, a);
    auto x = exact::solve(mc, rhs);
    if (!x) return std::nullopt;
    std::vector<Rational> full(n, Rational(0));
    full[a] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) full[comp[k]] = (*x)[k];
    out.push_back(std::move(full));
  }
  return out;
}

// ---- tree bases -----------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Index a, Index b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<Index> complement_of(const StarGraph& g, const std::vector<Index>& classes) {
  std::vector<bool> in(g.class_count(), false);
  for (Index c : classes) in[c] = true;
  std::vector<Index> comp;
  for (Index c = 0; c < g.class_count(); ++c)
    if (!in[c]) comp.push_back(c);
  return comp;
}

// Adds the quotient edges of class c; false (and no change) if that closes a cycle.
bool add_class(const StarGraph& g, const QuotientGraph& q, UnionFind& uf, Index c) {
  UnionFind trial = uf;
  for (Index e : g.edge_class(c).members)
    if (!trial.unite(q.edges[e].first, q.edges[e].second)) return false;
  uf = std::move(trial);
  return true;
}

std::size_t tree_edge_count(const StarGraph& g, const std::vector<Index>& classes) {
  std::size_t n = 0;
  for (Index c : classes) n += g.edge_class(c).members.size();
  return n;
}

}  // namespace

bool complement_is_spanning_tree(const StarGraph& g, const QuotientGraph& q, const std::vector<Index>& classes) {
  auto comp = complement_of(g, classes);
  if (tree_edge_count(g, comp) + 1 != q.node_count()) return false;
  UnionFind uf(q.node_count());
  for (Index c : comp)
    if (!add_class(g, q, uf, c)) return false;
  return true;
}

BasisCheck is_tree_basis(const StarGraph& g, const std::vector<Index>& classes) {
  BasisCheck r;
  r.size_ok = classes.size() + g.v1().size() == g.class_count();
  r.spanning_tree = complement_is_spanning_tree(g, build_quotient_graph(g), classes);
  r.full_rank = dual_vectors(g, FlowSpace::L, classes).has_value();
  return r;
}

std::vector<TreeBasis> enumerate_tree_bases(const StarGraph& g, std::size_t max_classes) {
  const std::size_t n = g.class_count();
  if (n > max_classes) throw Error(ErrorCode::SizeLimit, "too many classes to enumerate bases");
  if (g.v1().size() > n) return {};
  const std::size_t k = n - g.v1().size();
  auto q = build_quotient_graph(g);
  std::vector<TreeBasis> out;
  std::vector<Index> pick;
  std::function<void(Index)> rec = [&](Index from) {
    if (pick.size() == k) {
      if (complement_is_spanning_tree(g, q, pick)) out.push_back({pick, complement_of(g, pick)});
      return;
    }
    for (Index c = from; c < n; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

TreeBasis find_tree_basis(const StarGraph& g) {
  auto q = build_quotient_graph(g);
  UnionFind uf(q.node_count());
  std::vector<bool> tree(g.class_count(), false);
  std::size_t edges = 0;
  for (Index c = g.class_count(); c-- > 0 && edges + 1 < q.node_count();) {
    if (add_class(g, q, uf, c)) {
      tree[c] = true;
      edges += g.edge_class(c).members.size();
    }
  }
  TreeBasis b;
  for (Index c = 0; c < g.class_count(); ++c) (tree[c] ? b.complement : b.classes).push_back(c);
  if (edges + 1 == q.node_count() && is_tree_basis(g, b.classes).valid()) return b;
  // Greedy can stall when pair classes must be taken together; fall back to search.
  if (g.class_count() <= 20)
    for (auto& cand : enumerate_tree_bases(g, 20))
      if (is_tree_basis(g, cand.classes).valid()) return cand;
  throw Error(ErrorCode::NoBasis, "quotient graph has no spanning tree made of whole edge classes");
}

Rational basis_change_determinant(const StarGraph& g, const std::vector<Index>& s1, const std::vector<Index>& s2,
                                  FlowSpace space) {
  auto d1 = dual_vectors(g, space, s1);
  if (!d1) throw Error(ErrorCode::NotABasis, "first class set is not a coordinate basis");
  if (!dual_vectors(g, space, s2)) throw Error(ErrorCode::NotABasis, "second class set is not a coordinate basis");
  exact::Matrix t(s2.size(), s1.size());
  for (std::size_t b = 0; b < s2.size(); ++b)
    for (std::size_t a = 0; a < s1.size(); ++a) t(b, a) = (*d1)[a][s2[b]];
  return exact::determinant(t);
}

Rational dropped_class_mass(const StarGraph& g, const TreeBasis& b, Index e0) {
  auto duals = dual_vectors(g, FlowSpace::L, b.classes);
  if (!duals) throw Error(ErrorCode::NotABasis, "class set is not a basis of L");
  auto it = std::find(b.classes.begin(), b.classes.end(), e0);
  if (it == b.classes.end()) throw Error(ErrorCode::NotABasis, "dropped class is not in the basis");
  const auto& psi = (*duals)[static_cast<std::size_t>(it - b.classes.begin())];
  auto mass = class_mass(g);
  Rational mu = 0;
  for (Index c = 0; c < g.class_count(); ++c) mu += mass[c] * psi[c];
  return mu;
}

// ---- charts -----------------------------------------------------------------

EdgeVec chart_anchor(const StarGraph& g) {
  const std::size_t n = g.vertex_count();
  // Reachability closure; fine for the graph sizes a chart is built for.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Index s = 0; s < n; ++s) {
    std::vector<Index> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index e : g.out_edges(v)) {
        Index w = g.edge(e).head;
        if (!reach[s][w]) reach[s][w] = true, stack.push_back(w);
      }
    }
  }
  EdgeVec y(g.edge_count(), 0.0);
  std::vector<bool> done(n, false);
  for (Index s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::vector<Index> comp;
    for (Index v = 0; v < n; ++v)
      if (reach[s][v] && reach[v][s]) comp.push_back(v);
    for (Index v : comp) done[v] = true;
    std::vector<Index> local(n, n);
    for (Index k = 0; k < comp.size(); ++k) local[comp[k]] = k;
    for (Index v : comp) {
      if (g.out_edges(v).empty()) throw Error(ErrorCode::Reducible, "vertex '" + g.id(v) + "' has no out-edge");
      for (Index e : g.out_edges(v))
        if (local[g.edge(e).head] == n)
          throw Error(ErrorCode::Reducible, "edge " + g.edge_label(e) + " leaves its strongly connected component");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(comp.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);  // (P^T - I), last row replaced by ones
    for (Index v : comp) {
      double p = 1.0 / static_cast<double>(g.out_edges(v).size());
      for (Index e : g.out_edges(v))
        a(static_cast<Eigen::Index>(local[g.edge(e).head]), static_cast<Eigen::Index>(local[v])) += p;
    }
    a -= Eigen::MatrixXd::Identity(m, m);
    a.row(m - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(m - 1) = 1.0;
    Eigen::VectorXd pi = a.fullPivLu().solve(rhs);
    for (Index v : comp) {
      double p = 1.0 / static_cast<double>(g.out_edges(v).size());
      for (Index e : g.out_edges(v)) y[e] = pi(static_cast<Eigen::Index>(local[v])) * p;
    }
  }
  y = star_symmetrize(g, y);
  double total = std::accumulate(y.begin(), y.end(), 0.0);
  for (double& v : y) v /= total;
  return y;
}

FlowChart FlowChart::build(const StarGraph& g) { return build(g, find_tree_basis(g)); }

FlowChart FlowChart::build(const StarGraph& g, const TreeBasis& basis, std::optional<Index> dropped) {
  auto duals = dual_vectors(g, FlowSpace::L, basis.classes);
  if (!duals) throw Error(ErrorCode::NotABasis, "class set is not a basis of L");
  auto mass = class_mass(g);
  std::vector<Rational> mu(basis.classes.size(), Rational(0));
  for (std::size_t k = 0; k < basis.classes.size(); ++k)
    for (Index c = 0; c < g.class_count(); ++c) mu[k] += mass[c] * (*duals)[k][c];

  std::size_t k0 = basis.classes.size();
  for (std::size_t k = 0; k < basis.classes.size(); ++k) {
    bool wanted = dropped ? basis.classes[k] == *dropped : mu[k] != 0;
    if (wanted) {
      k0 = k;
      break;
    }
  }
  if (k0 == basis.classes.size() || mu[k0] == 0)
    throw Error(ErrorCode::NoBasis, "no basis class with non-zero E-mass to drop");

  FlowChart ch;
  ch.basis_ = basis;
  ch.dropped_ = basis.classes[k0];
  ch.mass_ = mu[k0];
  ch.class_of_edge_.resize(g.edge_count());
  for (Index e = 0; e < g.edge_count(); ++e) ch.class_of_edge_[e] = g.class_of(e);
  const auto& psi0 = (*duals)[k0];
  ch.exact_base_.resize(g.class_count());
  for (Index c = 0; c < g.class_count(); ++c) ch.exact_base_[c] = psi0[c] / mu[k0];
  for (std::size_t k = 0; k < basis.classes.size(); ++k) {
    if (k == k0) continue;
    ch.coords_.push_back(basis.classes[k]);
    std::vector<Rational> dir(g.class_count());
    Rational r = mu[k] / mu[k0];
    for (Index c = 0; c < g.class_count(); ++c) dir[c] = (*duals)[k][c] - r * psi0[c];
    ch.exact_dirs_.push_back(std::move(dir));
  }
  for (const auto& v : ch.exact_base_) ch.base_class_.push_back(v.get_d());
  for (const auto& d : ch.exact_dirs_) {
    std::vector<double> dd;
    for (const auto& v : d) dd.push_back(v.get_d());
    ch.directions_.push_back(class_to_edge(g, dd));
    ch.dirs_class_.push_back(std::move(dd));
  }
  ch.base_ = class_to_edge(g, ch.base_class_);
  ch.anchor_ = chart_anchor(g);
  // The anchor is in L1 by construction; from_l1 re-checks it against this chart.
  ch.from_l1(ch.anchor_, 1e-9);
  return ch;
}

double FlowChart::log_reference_factor() const { return -std::log(std::abs(mass_.get_d())); }

EdgeVec FlowChart::to_l1_unchecked(std::span<const double> coords) const {
  std::vector<double> cls = base_class_;
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t c = 0; c < cls.size(); ++c) cls[c] += coords[a] * dirs_class_[a][c];
  EdgeVec y(class_of_edge_.size());
  for (std::size_t e = 0; e < y.size(); ++e) y[e] = cls[class_of_edge_[e]];
  return y;
}

EdgeVec FlowChart::to_l1(std::span<const double> coords) const {
  if (coords.size() != dimension()) throw Error(ErrorCode::OutOfDomain, "wrong number of chart coordinates");
  EdgeVec y = to_l1_unchecked(coords);
  for (double v : y)
    if (!(v > 0)) throw Error(ErrorCode::OutOfDomain, "chart point has a non-positive edge value");
  return y;
}

bool FlowChart::contains(std::span<const double> coords) const {
  if (coords.size() != dimension()) return false;
  for (double v : to_l1_unchecked(coords))
    if (!(v > 0)) return false;
  return true;
}

std::vector<double> FlowChart::from_l1(const EdgeVec& y, double tol) const {
  if (y.size() != class_of_edge_.size()) throw Error(ErrorCode::OutOfDomain, "edge vector has the wrong size");
  std::vector<double> rep(base_class_.size(), 0.0);
  std::vector<bool> seen(base_class_.size(), false);
  for (std::size_t e = 0; e < y.size(); ++e) {
    Index c = class_of_edge_[e];
    if (!seen[c]) rep[c] = y[e], seen[c] = true;
    else if (std::abs(rep[c] - y[e]) > tol) throw Error(ErrorCode::OutOfDomain, "edge vector is not star-symmetric");
  }
  std::vector<double> coords;
  for (Index c : coords_) coords.push_back(rep[c]);
  EdgeVec back = to_l1_unchecked(coords);
  for (std::size_t e = 0; e < y.size(); ++e)
    if (std::abs(back[e] - y[e]) > tol) throw Error(ErrorCode::OutOfDomain, "edge vector is not in L1");
  return coords;
}

std::vector<double> FlowChart::anchor_coords() const { return from_l1(anchor_); }

nlohmann::json FlowChart::to_json(const StarGraph& g) const {
  auto label = [&](Index c) { return g.edge_label(g.edge_class(c).representative); };
  nlohmann::json j;
  j["dimension"] = dimension();
  for (Index c : basis_.classes) j["basis"].push_back(label(c));
  if (basis_.classes.empty()) j["basis"] = nlohmann::json::array();
  j["dropped"] = label(dropped_);
  j["droppedMass"] = format_rational(mass_);
  j["coordinates"] = nlohmann::json::array();
  for (Index c : coords_) j["coordinates"].push_back(label(c));
  j["anchor"] = nlohmann::json::array();
  for (Index e = 0; e < g.edge_count(); ++e) j["anchor"].push_back({{"edge", g.edge_label(e)}, {"value", anchor_[e]}});
  return j;
}

std::vector<double> sample_chart_point(const FlowChart& chart, Rng& rng, int steps, double margin) {
  std::vector<double> c = chart.anchor_coords();
  const std::size_t d = c.size();
  if (d == 0) return c;
  std::normal_distribution<double> normal;
  for (int s = 0; s < steps; ++s) {
    std::vector<double> dir(d);
    for (double& v : dir) v = normal(rng);
    EdgeVec y = chart.to_l1_unchecked(c);
    EdgeVec dy(y.size(), 0.0);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t e = 0; e < y.size(); ++e) dy[e] += dir[a] * chart.directions()[a][e];
    double tmax = std::numeric_limits<double>::infinity(), tmin = -tmax;
    for (std::size_t e = 0; e < y.size(); ++e) {
      if (dy[e] < 0) tmax = std::min(tmax, -y[e] / dy[e]);
      else if (dy[e] > 0) tmin = std::max(tmin, -y[e] / dy[e]);
    }
    double t = margin * (tmin + (tmax - tmin) * uniform_open(rng));
    // Shrinking toward the current point keeps a margin from both faces.
    for (std::size_t a = 0; a < d; ++a) c[a] += t * dir[a];
  }
  return c;
}

// ---- quadratic form and generator ----------------------------------------

double q_bilinear(const StarGraph& g, const EdgeVec& w, const EdgeVec& x, const EdgeVec& xp) {
  double s = 0, sx = 0, sxp = 0;
  for (Index e = 0; e < g.edge_count(); ++e) {
    s += x[e] * xp[e] / w[e];
    sx += x[e];
    sxp += xp[e];
  }
  auto wo = out_sums(g, w), xo = out_sums(g, x), xpo = out_sums(g, xp);
  for (Index i = 0; i < g.vertex_count(); ++i) {
    double bx = 0.5 * (xo[i] + xo[g.star(i)]);
    double bxp = 0.5 * (xpo[i] + xpo[g.star(i)]);
    s -= bx * bxp / wo[i];
  }
  return s + sx * sxp;
}

Eigen::MatrixXd q_gram(const StarGraph& g, const EdgeVec& w, const FlowChart& chart) {
  const auto& z = chart.directions();
  const auto d = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      a(i, j) = a(j, i) = q_bilinear(g, w, z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)]);
  if (d > 0 && a.llt().info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "Q_w is not positive definite on the chart directions");
  return a;
}

Parity classify_parity(const StarGraph& g, const VertexVec& h, double tol) {
  bool anti = true, sym = true;
  for (Index i = 0; i < g.vertex_count(); ++i) {
    anti = anti && std::abs(h[i] + h[g.star(i)]) <= tol;
    sym = sym && std::abs(h[i] - h[g.star(i)]) <= tol;
  }
  return anti ? Parity::Antisymmetric : sym ? Parity::Symmetric : Parity::None;
}

VertexVec generator_apply(const StarGraph& g, const EdgeVec& y, const VertexVec& v) {
  VertexVec out(g.vertex_count(), 0.0);
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out[ed.tail] += y[e] * (v[ed.head] - v[ed.tail]);
  }
  return out;
}

namespace {
bool support_strongly_connected(const StarGraph& g, const EdgeVec& y) {
  const std::size_t n = g.vertex_count();
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index e : forward ? g.out_edges(v) : g.in_edges(v)) {
        if (!(y[e] > 0)) continue;
        Index w = forward ? g.edge(e).head : g.edge(e).tail;
        if (!seen[w]) seen[w] = true, stack.push_back(w);
      }
    }
    return std::find(seen.begin(), seen.end(), false) == seen.end();
  };
  return n == 0 || (reach(true) && reach(false));
}
}  // namespace

VertexVec generator_solve(const StarGraph& g, const EdgeVec& y, const VertexVec& h) {
  double sum = 0, scale = 0;
  for (double v : h) sum += v, scale += std::abs(v);
  if (std::abs(sum) > 1e-12 * std::max(1.0, scale)) throw Error(ErrorCode::NotSolvable, "sum of h is not zero");
  if (!support_strongly_connected(g, y)) throw Error(ErrorCode::Reducible, "support of Y is not strongly connected");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  // Bordered system [G 1; 1^T 0] [v; c] = [h; 0].
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (Index e = 0; e < g.edge_count(); ++e) {
    auto i = static_cast<Eigen::Index>(g.edge(e).tail), j = static_cast<Eigen::Index>(g.edge(e).head);
    a(i, j) += y[e];
    a(i, i) -= y[e];
  }
  for (Eigen::Index i = 0; i < n; ++i) a(i, n) = a(n, i) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = h[static_cast<std::size_t>(i)];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::Reducible, "generator is singular on the zero-sum gauge");
  Eigen::VectorXd sol = lu.solve(rhs);
  // One step of iterative refinement keeps the residual at rounding level.
  sol += lu.solve(rhs - a * sol);
  return VertexVec(sol.data(), sol.data() + n);
}

DecompositionResult orthogonal_decompose(const StarGraph& g, const EdgeVec& y, const EdgeVec& x) {
  DecompositionResult r;
  r.lambda = std::accumulate(x.begin(), x.end(), 0.0);
  auto d = divergence(g, x);
  r.h.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r.h[i] = 0.5 * d[i];
  r.v = generator_solve(g, y, r.h);
  auto yo = out_sums(g, y);
  double shift = 0;
  for (std::size_t i = 0; i < r.v.size(); ++i) shift += yo[i] * r.v[i];
  for (double& vi : r.v) vi -= shift;
  r.omega.resize(g.edge_count());
  r.z.resize(g.edge_count());
  for (Index e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    r.omega[e] = y[e] * (r.v[g.star(ed.tail)] + r.v[ed.head]);
    r.z[e] = x[e] - r.lambda * y[e] - r.omega[e];
  }
  r.h_parity = classify_parity(g, r.h);
  r.v_parity = classify_parity(g, r.v);
  return r;
}

// ---- tree determinants ------------------------------------------------------

double arborescence_sum(const StarGraph& g, const EdgeVec& y, Index root) {
  const std::size_t n = g.vertex_count();
  if (n > 8) throw Error(ErrorCode::SizeLimit, "arborescence enumeration is limited to 8 vertices");
  std::vector<Index> others;
  for (Index v = 0; v < n; ++v)
    if (v != root) others.push_back(v);
  std::vector<Index> parent(n, n);
  double total = 0;
  auto acyclic = [&] {
    for (Index v : others) {
      Index u = v;
      for (std::size_t k = 0; k < n && u != root; ++k) u = parent[u];
      if (u != root) return false;
    }
    return true;
  };
  std::function<void(std::size_t, double)> rec = [&](std::size_t k, double prod) {
    if (k == others.size()) {
      if (acyclic()) total += prod;
      return;
    }
    Index v = others[k];
    for (Index e : g.out_edges(v)) {
      if (g.is_loop(e)) continue;
      parent[v] = g.edge(e).head;
      rec(k + 1, prod * y[e]);
    }
    parent[v] = n;
  };
  rec(0, 1.0);
  return total;
}

double tree_determinant(const StarGraph& g, const EdgeVec& y, Index root) {
  const std::size_t n = g.vertex_count();
  if (n == 1) return 1.0;
  std::vector<Eigen::Index> pos(n, -1);
  Eigen::Index k = 0;
  for (Index v = 0; v < n; ++v)
    if (v != root) pos[v] = k++;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k, k);
  for (Index e = 0; e < g.edge_count(); ++e) {
    Eigen::Index i = pos[g.edge(e).tail], j = pos[g.edge(e).head];
    if (i < 0) continue;
    l(i, i) += y[e];
    if (j >= 0) l(i, j) -= y[e];
  }
  double d = l.partialPivLu().determinant();
  if (!(d > 0) || !std::isfinite(d)) throw Error(ErrorCode::Singular, "tree determinant is not positive");
  return d;
}

}  // namespace srw
