#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "srw/errw.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/quadrature.hpp"
#include "srw/rng.hpp"
#include "srw/zoo.hpp"

using namespace srw;

namespace {

constexpr double kPi = std::numbers::pi;

// Undirected magic-formula density in the weights x_e = 2 y_e of the triangle,
// started at vertex 1, all initial weights 1, up to a constant.
double log_magic_triangle(double x12, double x13, double x23) {
  const double x1 = x12 + x13, x2 = x12 + x23, x3 = x13 + x23;
  const double trees = x12 * x13 + x12 * x23 + x13 * x23;
  return 0.5 * std::log(x1) - 1.5 * (std::log(x1) + std::log(x2) + std::log(x3)) + 0.5 * std::log(trees);
}

StarGraph single_fixed_loop() { return StarGraph::build({{{"a", "a"}}, {{"a", "a"}}}); }

}  // namespace

TEST(Constants, GammaTriangle) {
  EXPECT_NEAR(std::exp(gamma_constant(zoo_triangle())), std::sqrt(2.0) * kPi, 1e-13);
}

TEST(Constants, C) {
  EXPECT_NEAR(c_constant(zoo_triangle().graph()), 1 / (2 * std::sqrt(2.0) * kPi), 1e-15);
  EXPECT_NEAR(c_constant(zoo_two_cycle().graph()), 2 * std::sqrt(kPi), 1e-14);
  EXPECT_NEAR(c_constant(single_fixed_loop()), std::sqrt(2.0), 1e-15);
}

TEST(Constants, GammaStepIdentity) {
  for (auto cfg : {zoo_triangle(), zoo_path(), zoo_amnesia(), zoo_rwde_glued()})
    for (Index e : cfg.graph().out_edges(cfg.start())) EXPECT_LE(gamma_step_residual(cfg, e), 1e-12);
}

TEST(Constants, V1InfLinearForm) {
  for (auto cfg : {zoo_amnesia(), zoo_rwde_glued(), zoo_two_cycle(), zoo_de_bruijn(2)}) {
    const auto& g = cfg.graph();
    auto out = out_sums(g, cfg.edge_alpha());
    for (Index i : g.v1()) EXPECT_EQ(v1_inf_linear_form(cfg, i), std::min(out[i], out[g.star(i)]));
  }
}

TEST(Density, FiniteAtAnchor) {
  for (const auto& z : graph_zoo()) {
    if (!z.admissible) continue;
    auto p = DensityParams::make(z.config);
    EXPECT_TRUE(std::isfinite(log_density(p, p.chart.anchor()).total)) << z.name;
  }
}

TEST(Density, OutOfDomain) {
  auto p = DensityParams::make(zoo_triangle());
  EdgeVec y = p.chart.anchor();
  y[0] *= 1.5;
  EXPECT_THROW(log_density(p, y), Error);
  EXPECT_THROW(DensityParams::make(zoo_two_cycle().with_start(1)), Error);
}

TEST(Density, MagicFormulaAgrees) {
  auto p = DensityParams::make(zoo_triangle());
  const auto& g = p.config.graph();
  Rng rng = make_stream(17, 0);
  std::vector<double> diff;
  for (int k = 0; k < 50; ++k) {
    auto y = p.chart.to_l1(sample_chart_point(p.chart, rng));
    auto x = [&](const char* a, const char* b) { return 2 * y[*g.find_edge(g.require(a), g.require(b))]; };
    diff.push_back(log_density(p, y).total - log_magic_triangle(x("1", "2"), x("1", "3"), x("2", "3")));
  }
  double m = 0, v = 0;
  for (double d : diff) m += d / static_cast<double>(diff.size());
  for (double d : diff) v += (d - m) * (d - m) / static_cast<double>(diff.size());
  EXPECT_LE(v, 1e-10);
}

TEST(Density, RatioIdentity) {
  for (auto cfg : {zoo_triangle(), zoo_path(), zoo_amnesia(), zoo_rwde_glued()}) {
    auto p = DensityParams::make(cfg);
    Rng rng = make_stream(19, 0);
    for (int k = 0; k < 20; ++k) {
      auto y = p.chart.to_l1(sample_chart_point(p.chart, rng));
      for (Index e : cfg.graph().out_edges(cfg.start())) ASSERT_LE(zeta_ratio_residual(cfg, y, e), 1e-12);
      ASSERT_LE(feynman_kac_residual(cfg, y), 1e-12);
      ASSERT_LE(feynman_kac_two_step_residual(cfg, y), 1e-12);
    }
  }
}

TEST(Density, RatioAcrossSelfPairedClassFails) {
  // Reinforcement by 2 on a self-paired class breaks the one-step identity.
  auto cfg = zoo_two_cycle();
  EXPECT_NEAR(feynman_kac_residual(cfg, EdgeVec{0.5, 0.5}), 0.75, 1e-12);
}

TEST(Kernel, RowsAndStationarity) {
  auto tri = zoo_triangle();
  const auto& g = tri.graph();
  std::vector<Rational> y{Rational(1, 6), Rational(1, 12), Rational(1, 6), Rational(1, 4), Rational(1, 12),
                          Rational(1, 4)};
  auto p = transition_kernel(g, y);
  auto rows = out_sums(g, p);
  for (const auto& r : rows) EXPECT_EQ(r, 1);
  auto yi = out_sums(g, y);
  std::vector<Rational> flow(g.vertex_count(), Rational(0));
  for (Index e = 0; e < g.edge_count(); ++e) flow[g.edge(e).head] += yi[g.edge(e).tail] * p[e];
  EXPECT_EQ(flow, yi);

  auto two = zoo_two_cycle();
  EXPECT_EQ(transition_kernel(two.graph(), EdgeVec{0.5, 0.5}), (EdgeVec{1, 1}));
  EXPECT_THROW(transition_kernel(g, EdgeVec{1, 0, 0, 0, 0, 0}), Error);
}

TEST(Normalization, PathAndTriangle) {
  auto path = normalization_integral(DensityParams::make(zoo_path()));
  EXPECT_NEAR(path.value, 1, 0.01);
  auto tri = normalization_integral(DensityParams::make(zoo_triangle()));
  EXPECT_NEAR(tri.value, 1, 0.02);
}

TEST(Normalization, RefinementShrinksError) {
  auto p = DensityParams::make(zoo_triangle());
  double prev = INFINITY;
  for (int order : {12, 24, 48}) {
    NormalizationOptions o;
    o.quadrature.order = order;
    auto r = normalization_integral(p, o);
    EXPECT_LT(r.error_estimate, prev);
    prev = r.error_estimate;
  }
}

TEST(Normalization, SmallAlphaNeedsSubstitution) {
  auto cfg = zoo_path();
  auto half = cfg.with_class_alpha({Rational(1, 2), Rational(1, 2)});
  auto p = DensityParams::make(half);
  try {
    normalization_integral(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundarySingularity);
  }
  NormalizationOptions o;
  o.power_substitution = true;
  o.quadrature.order = 96;
  EXPECT_NEAR(normalization_integral(p, o).value, 1, 0.01);
}

TEST(Normalization, DimensionTooHigh) {
  try {
    normalization_integral(DensityParams::make(zoo_de_bruijn(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionTooHigh);
  }
}

TEST(Normalization, TriangleClassMeans) {
  // E[2 y_c] under the mixing measure, started at 1.
  auto p = DensityParams::make(zoo_triangle());
  const auto& g = p.config.graph();
  auto f = density_integrand(p);
  auto poly = Polytope::from_chart(p.chart);
  QuadratureOptions q;
  q.order = 64;
  auto mean = [&](Index e) {
    Integrand h = [&](std::span<const double> c) { return 2 * p.chart.to_l1_unchecked(c)[e] * f(c); };
    return integrate_polytope(poly, h, q).value / integrate_polytope(poly, f, q).value;
  };
  EXPECT_NEAR(mean(*g.find_edge(0, 1)), 0.36931583549228125, 1e-6);
  EXPECT_NEAR(mean(*g.find_edge(0, 2)), 0.36931583549228125, 1e-6);
  EXPECT_NEAR(mean(*g.find_edge(1, 2)), 0.2613683290154214, 1e-6);
}

TEST(Gaussian, ClosedEqualsGramWithoutSelfPairs) {
  for (auto cfg : {zoo_triangle(), zoo_path()}) {
    const auto& g = cfg.graph();
    auto chart = FlowChart::build(g);
    Rng rng = make_stream(23, 0);
    for (int k = 0; k < 10; ++k) {
      auto w = chart.to_l1(sample_chart_point(chart, rng));
      double a = gaussian_integral_closed(g, w), b = gaussian_integral_gram(g, w, chart);
      EXPECT_NEAR(a / b, 1, 1e-8);
    }
  }
}

TEST(Gaussian, DeBruijnRatio) {
  auto cfg = zoo_de_bruijn(2);
  auto chart = FlowChart::build(cfg.graph());
  const auto& w = chart.anchor();
  EXPECT_NEAR(gaussian_integral_gram(cfg.graph(), w, chart) / gaussian_integral_closed(cfg.graph(), w),
              2 * std::sqrt(2.0), 1e-10);
}

TEST(Gaussian, ScalingPowers) {
  auto tri = zoo_triangle();
  const auto& g = tri.graph();
  auto chart = FlowChart::build(g);
  const double d = static_cast<double>(chart.dimension());
  EdgeVec w = chart.anchor(), w4 = w;
  for (auto& v : w4) v *= 4;
  EXPECT_NEAR(gaussian_integral_closed(g, w4) / gaussian_integral_closed(g, w), std::pow(4.0, (d + 2) / 2), 1e-10);
  EXPECT_NEAR(gaussian_integral_gram(g, w4, chart) / gaussian_integral_gram(g, w, chart), std::pow(4.0, d / 2),
              1e-10);
}

TEST(Hessian, BetaIsCriticalPoint) {
  // For beta in L1, log eta_beta is maximal at y = beta with Hessian -Q_beta / 2.
  for (auto cfg : {zoo_triangle(), zoo_path(), zoo_amnesia()}) {
    const auto& g = cfg.graph();
    auto chart = FlowChart::build(g);
    Rng rng = make_stream(29, 0);
    auto beta = chart.to_l1(sample_chart_point(chart, rng));
    auto h = eta_hessian_check(g, beta, chart, rng);
    EXPECT_LE(h.residual, 1e-5);
    EXPECT_LE(h.gradient_norm, 1e-8);
    EXPECT_LE(h.max_excess, 1e-12);
  }
}
