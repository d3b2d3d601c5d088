#include <gtest/gtest.h>

#include "srw/harness.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/quadrature.hpp"
#include "srw/zoo.hpp"

using namespace srw;

// The OpenMP kernels must reproduce the serial reference bit for bit.

TEST(Parallel, TensorRuleMatchesSerial) {
  for (auto cfg : {zoo_path(), zoo_triangle()}) {
    auto p = DensityParams::make(cfg);
    auto poly = Polytope::from_chart(p.chart);
    auto f = density_integrand(p);
    std::size_t ns = 0, np = 0;
    double s = tensor_rule(poly, f, 64, 2.0, Execution::Serial, &ns);
    double q = tensor_rule(poly, f, 64, 2.0, Execution::Parallel, &np);
    EXPECT_EQ(s, q);
    EXPECT_EQ(ns, np);
  }
}

TEST(Parallel, OccupationMatchesSerial) {
  for (auto cfg : {zoo_triangle(), zoo_amnesia()}) {
    auto s = estimate_occupation(cfg, 500, 64, 9, Execution::Serial);
    auto p = estimate_occupation(cfg, 500, 64, 9, Execution::Parallel);
    EXPECT_EQ(s.samples, p.samples);
    EXPECT_EQ(s.class_mean, p.class_mean);
    EXPECT_EQ(s.class_se, p.class_se);
    EXPECT_EQ(s.max_divergence_residual, p.max_divergence_residual);
  }
}

TEST(Parallel, SkeletonTestIsSeedDeterministic) {
  auto cfg = zoo_triangle();
  auto a = skeleton_chisquare_test(cfg, 3, 5000, 4);
  auto b = skeleton_chisquare_test(cfg, 3, 5000, 4);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_EQ(a.bins, b.bins);
}
