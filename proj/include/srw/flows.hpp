#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "srw/exact_linalg.hpp"
#include "srw/rng.hpp"
#include "srw/star_graph.hpp"

namespace srw {

// ---- quotient graph -------------------------------------------------------

struct QuotientGraph {
  std::vector<std::string> labels;  // non-fixed vertices in index order, then "delta" if V0 is non-empty
  bool has_delta = false;
  std::vector<Index> node_of;       // original vertex -> quotient node
  std::vector<std::pair<Index, Index>> edges;  // quotient edge k is the image of back_map[k]
  std::vector<Index> back_map;

  std::size_t node_count() const { return labels.size(); }
};

QuotientGraph build_quotient_graph(const StarGraph& g);

// ---- exact flow structure -------------------------------------------------

// Class coordinates: x in H is one number per class. div_matrix(i, c) is the divergence
// at i of the indicator of class c; mass(c) is its E-sum (1 or 2).
exact::Matrix div_matrix(const StarGraph& g);
exact::Matrix div_mass_matrix(const StarGraph& g);  // div rows plus the mass row
std::vector<Rational> class_mass(const StarGraph& g);

std::size_t dim_l(const StarGraph& g);
std::size_t dim_l0(const StarGraph& g);

enum class FlowSpace { L, L0 };

// For a coordinate set S of the given space: for each a in S, the unique element with
// S-coordinates e_a. Empty optional if S is not a coordinate basis.
std::optional<std::vector<std::vector<Rational>>> dual_vectors(const StarGraph& g, FlowSpace space,
                                                               const std::vector<Index>& coords);

// ---- tree bases -----------------------------------------------------------

struct TreeBasis {
  std::vector<Index> classes;     // B, ascending
  std::vector<Index> complement;  // classes whose member edges form the spanning tree
};

struct BasisCheck {
  bool size_ok = false;        // |B| = |E~| - |V1|
  bool spanning_tree = false;  // complement edges form a spanning tree of the quotient
  bool full_rank = false;      // {y_e}_{e in B} are coordinates on L (exact rank)
  bool valid() const { return size_ok && spanning_tree && full_rank; }
};

BasisCheck is_tree_basis(const StarGraph& g, const std::vector<Index>& classes);
bool complement_is_spanning_tree(const StarGraph& g, const QuotientGraph& q, const std::vector<Index>& classes);

// Greedy spanning tree on the quotient (classes in descending order), complemented.
TreeBasis find_tree_basis(const StarGraph& g);

// Every class set passing the spanning-tree test; throws SizeLimit above max_classes.
std::vector<TreeBasis> enumerate_tree_bases(const StarGraph& g, std::size_t max_classes = 16);

// Exact determinant of the change of coordinates from S1 to S2 (both bases of `space`).
Rational basis_change_determinant(const StarGraph& g, const std::vector<Index>& s1, const std::vector<Index>& s2,
                                  FlowSpace space = FlowSpace::L0);

// E-mass of the L-element dual to e0 in basis B: the scale between dy_{B\e0} and the
// basis-independent reference measure.
Rational dropped_class_mass(const StarGraph& g, const TreeBasis& b, Index e0);

// ---- charts -----------------------------------------------------------------

// Stationary flow of the uniform out-neighbour chain on each closed strongly connected
// component, star-symmetrised and scaled to sum 1 over E.
EdgeVec chart_anchor(const StarGraph& g);

class FlowChart {
 public:
  static FlowChart build(const StarGraph& g);
  static FlowChart build(const StarGraph& g, const TreeBasis& basis, std::optional<Index> dropped = {});

  std::size_t dimension() const { return coords_.size(); }
  const TreeBasis& basis() const { return basis_; }
  const std::vector<Index>& coordinate_classes() const { return coords_; }
  Index dropped_class() const { return dropped_; }
  const Rational& dropped_mass() const { return mass_; }
  // log of 1/|mu_{e0}|: converts Lebesgue measure in chart coordinates to the
  // basis-independent reference measure on L1.
  double log_reference_factor() const;

  EdgeVec to_l1(std::span<const double> coords) const;  // throws OutOfDomain unless positive
  EdgeVec to_l1_unchecked(std::span<const double> coords) const;
  std::vector<double> from_l1(const EdgeVec& y, double tol = 1e-9) const;
  bool contains(std::span<const double> coords) const;

  const EdgeVec& anchor() const { return anchor_; }
  std::vector<double> anchor_coords() const;
  const std::vector<EdgeVec>& directions() const { return directions_; }
  const EdgeVec& base_point() const { return base_; }

  // Feasible set in class coordinates: base_class[c] + sum_a dir_class[a][c] * coords_a > 0.
  const std::vector<Rational>& exact_base() const { return exact_base_; }
  const std::vector<std::vector<Rational>>& exact_directions() const { return exact_dirs_; }

  nlohmann::json to_json(const StarGraph& g) const;

 private:
  std::vector<Index> class_of_edge_;
  TreeBasis basis_;
  std::vector<Index> coords_;
  Index dropped_ = 0;
  Rational mass_;
  std::vector<Rational> exact_base_;
  std::vector<std::vector<Rational>> exact_dirs_;
  std::vector<double> base_class_;
  std::vector<std::vector<double>> dirs_class_;
  EdgeVec base_;
  std::vector<EdgeVec> directions_;
  EdgeVec anchor_;
};

// Interior point of the chart by hit-and-run from the anchor; each step moves a uniform
// fraction of the way to the boundary along a random direction, shrunk by `margin`.
std::vector<double> sample_chart_point(const FlowChart& chart, Rng& rng, int steps = 8, double margin = 0.9);

// ---- quadratic form and generator ----------------------------------------

double q_bilinear(const StarGraph& g, const EdgeVec& w, const EdgeVec& x, const EdgeVec& xp);

// Gram matrix of Q_w on the chart directions; throws NotPositiveDefinite.
Eigen::MatrixXd q_gram(const StarGraph& g, const EdgeVec& w, const FlowChart& chart);

enum class Parity { Symmetric, Antisymmetric, None };
Parity classify_parity(const StarGraph& g, const VertexVec& h, double tol = 1e-10);

// (G^Y v)_i = sum_j Y_ij (v_j - v_i)
VertexVec generator_apply(const StarGraph& g, const EdgeVec& y, const VertexVec& v);

// G^Y v = h with sum(v) = 0. Throws NotSolvable if sum(h) != 0, Reducible if the
// support of Y is not strongly connected.
VertexVec generator_solve(const StarGraph& g, const EdgeVec& y, const VertexVec& h);

struct DecompositionResult {
  double lambda = 0;
  EdgeVec omega;
  EdgeVec z;
  VertexVec h;
  VertexVec v;  // gauge: sum_i Y_i v_i = 0
  Parity h_parity = Parity::None;
  Parity v_parity = Parity::None;
};

DecompositionResult orthogonal_decompose(const StarGraph& g, const EdgeVec& y, const EdgeVec& x);

// ---- tree determinants ------------------------------------------------------

// Sum over spanning arborescences oriented toward `root` (|V| <= 8).
double arborescence_sum(const StarGraph& g, const EdgeVec& y, Index root);

// det of L = diag(y^->) - A(y) with the root row and column removed.
double tree_determinant(const StarGraph& g, const EdgeVec& y, Index root);

}  // namespace srw
