#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srw/rational.hpp"

namespace srw {

class FlowChart;

// Open polytope {c : b_k + sum_a A_{k,a} c_a > 0 for all k}; assumed bounded.
struct Polytope {
  std::size_t dimension = 0;
  std::vector<Rational> b;
  std::vector<std::vector<Rational>> a;  // one row per constraint

  static Polytope from_chart(const FlowChart& chart);

  // Coordinates reordered so that new coordinate j is old coordinate order[j].
  Polytope permuted(const std::vector<std::size_t>& order) const;
};

struct Interval {
  double lo;
  double hi;
};

// Exact range of coordinate 0 over the whole polytope (rational vertex enumeration).
Interval outer_bounds(const Polytope& p);

// Range of coordinate prefix.size() when the leading coordinates are fixed to prefix.
Interval slice_bounds(const Polytope& p, std::span<const double> prefix);

struct GaussRule {
  std::vector<double> nodes;    // on (0, 1)
  std::vector<double> weights;  // sum to 1
};

GaussRule gauss_legendre(int order);

enum class Execution { Serial, Parallel };

struct QuadratureOptions {
  int order = 48;          // Gauss-Legendre points per coordinate
  double grading = 2.0;    // endpoint grading exponent p of u^p / (u^p + (1-u)^p)
  Execution execution = Execution::Parallel;
  std::uint64_t seed = 0;  // quasi-MC shifts (dimension 3)
  std::size_t qmc_points = 1u << 14;
  int qmc_shifts = 8;
};

struct IntegralResult {
  double value = 0;
  double error_estimate = 0;
  std::string method;
  int order = 0;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
};

using Integrand = std::function<double(std::span<const double>)>;

// Iterated graded Gauss-Legendre for dimension <= 2, shifted Halton points for 3.
// The error estimate is |I(N) - I(N/2)| (tensor) or the shift standard error (QMC).
IntegralResult integrate_polytope(const Polytope& p, const Integrand& f, const QuadratureOptions& opt);

// Tensor rule at a fixed order, no error estimate; exposed for the serial/parallel benchmark.
double tensor_rule(const Polytope& p, const Integrand& f, int order, double grading, Execution exec,
                   std::size_t* evaluations = nullptr);

// Distribution function of coordinate k under the (unnormalised) density f, evaluated
// at ascending points; values are divided by the total mass.
std::vector<double> marginal_cdf(const Polytope& p, const Integrand& f, std::size_t k,
                                 const std::vector<double>& sorted_points, const QuadratureOptions& opt);

}  // namespace srw
