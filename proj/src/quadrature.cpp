#include "srw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "srw/error.hpp"
#include "srw/exact_linalg.hpp"
#include "srw/flows.hpp"
#include "srw/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srw {

Polytope Polytope::from_chart(const FlowChart& chart) {
  Polytope p;
  p.dimension = chart.dimension();
  const auto& base = chart.exact_base();
  const auto& dirs = chart.exact_directions();
  for (std::size_t c = 0; c < base.size(); ++c) {
    std::vector<Rational> row(p.dimension);
    bool nonzero = false;
    for (std::size_t a = 0; a < p.dimension; ++a) {
      row[a] = dirs[a][c];
      nonzero = nonzero || row[a] != 0;
    }
    if (!nonzero) continue;  // constant constraint, positive on a non-empty chart
    p.b.push_back(base[c]);
    p.a.push_back(std::move(row));
  }
  return p;
}

Polytope Polytope::permuted(const std::vector<std::size_t>& order) const {
  Polytope q = *this;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = 0; j < dimension; ++j) q.a[k][j] = a[k][order[j]];
  return q;
}

namespace {

// Visit every size-m subset of {0..n-1}.
template <class F>
void for_each_subset(std::size_t n, std::size_t m, F&& f) {
  std::vector<std::size_t> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = k;
  if (m > n) return;
  while (true) {
    f(idx);
    std::size_t k = m;
    while (k > 0 && idx[k - 1] == n - m + k - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t j = k; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Interval outer_bounds(const Polytope& p) {
  const std::size_t d = p.dimension, rows = p.b.size();
  bool found = false;
  Rational lo, hi;
  for_each_subset(rows, d, [&](const std::vector<std::size_t>& s) {
    exact::Matrix m(d, d);
    std::vector<Rational> rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t j = 0; j < d; ++j) m(r, j) = p.a[s[r]][j];
      rhs[r] = -p.b[s[r]];
    }
    auto x = exact::solve(m, rhs);
    if (!x) return;
    for (std::size_t k = 0; k < rows; ++k) {
      Rational v = p.b[k];
      for (std::size_t j = 0; j < d; ++j) v += p.a[k][j] * (*x)[j];
      if (v < 0) return;
    }
    const Rational& c0 = (*x)[0];
    if (!found || c0 < lo) lo = c0;
    if (!found || c0 > hi) hi = c0;
    found = true;
  });
  if (!found) throw Error(ErrorCode::OutOfDomain, "chart polytope has no vertex");
  return {lo.get_d(), hi.get_d()};
}

Interval slice_bounds(const Polytope& p, std::span<const double> prefix) {
  const std::size_t d = p.dimension, k0 = prefix.size(), m = d - k0, rows = p.b.size();
  std::vector<double> bb(rows);
  std::vector<std::vector<double>> aa(rows, std::vector<double>(m));
  for (std::size_t k = 0; k < rows; ++k) {
    double v = p.b[k].get_d();
    for (std::size_t j = 0; j < k0; ++j) v += p.a[k][j].get_d() * prefix[j];
    bb[k] = v;
    for (std::size_t j = 0; j < m; ++j) aa[k][j] = p.a[k][k0 + j].get_d();
  }
  if (m == 1) {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rows; ++k) {
      if (aa[k][0] > 0) lo = std::max(lo, -bb[k] / aa[k][0]);
      else if (aa[k][0] < 0) hi = std::min(hi, -bb[k] / aa[k][0]);
    }
    return {lo, std::max(lo, hi)};
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  Eigen::MatrixXd mat(m, m);
  Eigen::VectorXd rhs(m);
  for_each_subset(rows, m, [&](const std::vector<std::size_t>& s) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < m; ++j) mat(r, j) = aa[s[r]][j];
      rhs(r) = -bb[s[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    if (!lu.isInvertible()) return;
    Eigen::VectorXd x = lu.solve(rhs);
    for (std::size_t k = 0; k < rows; ++k) {
      double v = bb[k];
      for (std::size_t j = 0; j < m; ++j) v += aa[k][j] * x(j);
      if (v < -1e-12) return;
    }
    lo = std::min(lo, x(0));
    hi = std::max(hi, x(0));
  });
  if (lo > hi) return {0.0, 0.0};
  return {lo, hi};
}

GaussRule gauss_legendre(int order) {
  const int n = std::max(order, 1);
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2 / ((1 - x * x) * dp * dp);
    // Map [-1, 1] to [0, 1].
    r.nodes[i] = 0.5 * (1 - x);
    r.nodes[n - 1 - i] = 0.5 * (1 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  return r;
}

namespace {

struct Graded {
  double x;  // in (0, 1)
  double jac;
};

Graded grade(double u, double p) {
  double a = std::pow(u, p), b = std::pow(1 - u, p);
  double x = a / (a + b);
  double jac = p * std::pow(u, p - 1) * std::pow(1 - u, p - 1) / ((a + b) * (a + b));
  return {x, jac};
}

struct TensorContext {
  const Polytope& p;
  const Integrand& f;
  const GaussRule& rule;
  double grading;
};

// Integral over coordinates k.. with coords[0..k) fixed.
double inner(const TensorContext& ctx, std::vector<double>& coords, std::size_t k, std::size_t& evals) {
  if (k == ctx.p.dimension) {
    ++evals;
    return ctx.f(coords);
  }
  Interval iv = slice_bounds(ctx.p, std::span<const double>(coords.data(), k));
  double len = iv.hi - iv.lo;
  if (!(len > 0)) return 0.0;
  double s = 0;
  for (std::size_t j = 0; j < ctx.rule.nodes.size(); ++j) {
    Graded gd = grade(ctx.rule.nodes[j], ctx.grading);
    coords[k] = iv.lo + len * gd.x;
    s += ctx.rule.weights[j] * gd.jac * len * inner(ctx, coords, k + 1, evals);
  }
  return s;
}

}  // namespace

double tensor_rule(const Polytope& p, const Integrand& f, int order, double grading, Execution exec,
                   std::size_t* evaluations) {
  if (p.dimension == 0) {
    if (evaluations) *evaluations = 1;
    return f(std::span<const double>());
  }
  GaussRule rule = gauss_legendre(order);
  TensorContext ctx{p, f, rule, grading};
  Interval iv = outer_bounds(p);
  const double len = iv.hi - iv.lo;
  const auto n = static_cast<long>(rule.nodes.size());
  std::vector<double> partial(rule.nodes.size(), 0.0);
  std::vector<std::size_t> counts(rule.nodes.size(), 0);

  auto node = [&](long j) {
    std::vector<double> coords(p.dimension, 0.0);
    Graded gd = grade(rule.nodes[j], grading);
    coords[0] = iv.lo + len * gd.x;
    std::size_t ev = 0;
    partial[j] = rule.weights[j] * gd.jac * len * inner(ctx, coords, 1, ev);
    counts[j] = ev;
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n; ++j) node(j);
  } else {
    for (long j = 0; j < n; ++j) node(j);
  }
  // Fixed summation order: identical results for either execution mode.
  double s = 0;
  std::size_t ev = 0;
  for (std::size_t j = 0; j < partial.size(); ++j) s += partial[j], ev += counts[j];
  if (evaluations) *evaluations = ev;
  return s;
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Map a point of the unit cube into the polytope; returns the Jacobian (0 if degenerate).
double cube_to_polytope(const Polytope& p, const Interval& outer, const double* u, double grading,
                        std::vector<double>& coords) {
  double jac = 1;
  for (std::size_t k = 0; k < p.dimension; ++k) {
    Interval iv = k == 0 ? outer : slice_bounds(p, std::span<const double>(coords.data(), k));
    double len = iv.hi - iv.lo;
    if (!(len > 0)) return 0.0;
    Graded gd = grade(u[k], grading);
    coords[k] = iv.lo + len * gd.x;
    jac *= len * gd.jac;
  }
  return jac;
}

IntegralResult quasi_monte_carlo(const Polytope& p, const Integrand& f, const QuadratureOptions& opt) {
  static constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13};
  const std::size_t d = p.dimension;
  const int shifts = std::max(opt.qmc_shifts, 2);
  std::vector<std::vector<double>> shift(shifts, std::vector<double>(d));
  Rng rng = make_stream(opt.seed, 0x51u);
  for (auto& s : shift)
    for (auto& v : s) v = uniform_open(rng);
  const Interval outer = outer_bounds(p);
  std::vector<double> est(shifts, 0.0);
  auto one_shift = [&](int r) {
    std::vector<double> coords(d), u(d);
    double s = 0;
    for (std::size_t i = 1; i <= opt.qmc_points; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        double v = radical_inverse(i, kBases[k]) + shift[r][k];
        u[k] = v - std::floor(v);
        u[k] = std::clamp(u[k], 1e-15, 1 - 1e-15);
      }
      double jac = cube_to_polytope(p, outer, u.data(), opt.grading, coords);
      if (jac > 0) s += jac * f(coords);
    }
    est[r] = s / static_cast<double>(opt.qmc_points);
  };
  if (opt.execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < shifts; ++r) one_shift(r);
  } else {
    for (int r = 0; r < shifts; ++r) one_shift(r);
  }
  double mean = 0, var = 0;
  for (double v : est) mean += v;
  mean /= shifts;
  for (double v : est) var += (v - mean) * (v - mean);
  var /= (shifts - 1);
  IntegralResult res;
  res.value = mean;
  res.error_estimate = std::sqrt(var / shifts);
  res.method = "quasi-mc-halton";
  res.evaluations = opt.qmc_points * static_cast<std::size_t>(shifts);
  res.seed = opt.seed;
  return res;
}

}  // namespace

IntegralResult integrate_polytope(const Polytope& p, const Integrand& f, const QuadratureOptions& opt) {
  if (p.dimension > 3) throw Error(ErrorCode::DimensionTooHigh, "quadrature supports chart dimension <= 3");
  if (p.dimension == 3) return quasi_monte_carlo(p, f, opt);
  IntegralResult r;
  r.method = p.dimension == 0 ? "point-mass" : "gauss-legendre-graded";
  r.order = opt.order;
  std::size_t ev_full = 0, ev_half = 0;
  r.value = tensor_rule(p, f, opt.order, opt.grading, opt.execution, &ev_full);
  if (p.dimension > 0) {
    double half = tensor_rule(p, f, std::max(opt.order / 2, 1), opt.grading, opt.execution, &ev_half);
    r.error_estimate = std::abs(r.value - half);
  }
  r.evaluations = ev_full + ev_half;
  r.seed = opt.seed;
  return r;
}

std::vector<double> marginal_cdf(const Polytope& p, const Integrand& f, std::size_t k,
                                 const std::vector<double>& points, const QuadratureOptions& opt) {
  if (p.dimension == 0 || p.dimension > 2 || k >= p.dimension)
    throw Error(ErrorCode::DimensionTooHigh, "marginal distribution needs chart dimension 1 or 2");
  std::vector<std::size_t> order{k};
  for (std::size_t j = 0; j < p.dimension; ++j)
    if (j != k) order.push_back(j);
  Polytope q = p.permuted(order);
  auto g = [&](std::span<const double> c) {
    std::vector<double> orig(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) orig[order[j]] = c[j];
    return f(orig);
  };
  GaussRule rule = gauss_legendre(opt.order);
  auto marginal_density = [&](double t) {
    if (q.dimension == 1) return g(std::span<const double>(&t, 1));
    Interval iv = slice_bounds(q, std::span<const double>(&t, 1));
    double len = iv.hi - iv.lo, s = 0;
    if (!(len > 0)) return 0.0;
    double c[2] = {t, 0};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      Graded gd = grade(rule.nodes[j], opt.grading);
      c[1] = iv.lo + len * gd.x;
      s += rule.weights[j] * gd.jac * len * g(std::span<const double>(c, 2));
    }
    return s;
  };
  Interval outer = outer_bounds(q);
  std::vector<double> cuts{outer.lo};
  for (double t : points) cuts.push_back(std::clamp(t, outer.lo, outer.hi));
  cuts.push_back(outer.hi);
  GaussRule seg = gauss_legendre(std::max(opt.order / 3, 8));
  std::vector<double> piece(cuts.size() - 1, 0.0);
  const auto n = static_cast<long>(piece.size());
  auto segment = [&](long i) {
    double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) return;
    double s = 0;
    for (std::size_t j = 0; j < seg.nodes.size(); ++j) {
      Graded gd = grade(seg.nodes[j], opt.grading);
      s += seg.weights[j] * gd.jac * (b - a) * marginal_density(a + (b - a) * gd.x);
    }
    piece[i] = s;
  };
  if (opt.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) segment(i);
  } else {
    for (long i = 0; i < n; ++i) segment(i);
  }
  double total = 0;
  for (double v : piece) total += v;
  std::vector<double> cdf;
  double run = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    run += piece[i];
    cdf.push_back(run / total);
  }
  return cdf;
}

}  // namespace srw
