#include <gtest/gtest.h>

#include "srw/flows.hpp"
#include "srw/harness.hpp"
#include "srw/stats.hpp"
#include "srw/verify.hpp"
#include "srw/zoo.hpp"

using namespace srw;

TEST(Tolerances, Override) {
  auto t = ToleranceTable::defaults();
  EXPECT_EQ(t.get("fk.relative"), 1e-12);
  t.apply_override("fk.relative=1e-6");
  EXPECT_EQ(t.get("fk.relative"), 1e-6);
  EXPECT_THROW(t.get("no.such"), Error);
  EXPECT_THROW(t.apply_override("no.such=1"), Error);
  EXPECT_THROW(t.apply_override("fk.relative"), Error);
  EXPECT_THROW(t.apply_override("fk.relative=abc"), Error);
}

TEST(ReportRecords, StatusAndJson) {
  Report r;
  r.seed = 3;
  r.add("small", 0.5, 1);
  r.add("large", 2, 1);
  r.add("at least", 2, 1, true);
  r.skip("n/a", "not applicable", 7);
  EXPECT_EQ(r.count(Status::Pass), 2u);
  EXPECT_EQ(r.count(Status::Fail), 1u);
  EXPECT_EQ(r.count(Status::Skip), 1u);
  EXPECT_FALSE(r.ok());
  auto j = r.to_json(false);
  EXPECT_EQ(j["schema"], kReportSchema);
  ASSERT_EQ(j["checks"].size(), 4u);
  EXPECT_EQ(j["checks"][1]["status"], "fail");
  EXPECT_FALSE(j["checks"][0].contains("runtime"));
  EXPECT_TRUE(r.to_json(true)["checks"][0].contains("runtime"));
  EXPECT_EQ(j["checks"][3]["note"], "not applicable");
}

TEST(Stats, Basics) {
  auto m = mean_se({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.se, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_NEAR(chisquare_pvalue(3.841458820694124, 1), 0.05, 1e-12);
  EXPECT_EQ(chisquare_pvalue(0, 3), 1);
  EXPECT_NEAR(ks_distance({0.25, 0.5, 0.75}, {0.25, 0.5, 0.75}), 0.25, 1e-15);
}

TEST(Occupation, SwapTwoCycle) {
  auto cfg = zoo_two_cycle();
  auto est = estimate_occupation(cfg, 100, 4, 1);
  ASSERT_EQ(est.class_mean.size(), 2u);
  EXPECT_EQ(est.class_mean[0], 0.5);
  EXPECT_EQ(est.class_mean[1], 0.5);
  EXPECT_EQ(est.class_se[0], 0);
  EXPECT_LE(est.max_divergence_residual, 1.0 / 100);
}

TEST(Occupation, TriangleMeansMatchMixingMeasure) {
  auto cfg = zoo_triangle();
  auto est = estimate_occupation(cfg, 2000, 400, 5);
  const auto& g = cfg.graph();
  // Per-edge y_c; E[2 y_c] from quadrature of the mixing measure.
  const double expect[3] = {0.36931583549228125, 0.36931583549228125, 0.2613683290154214};
  for (Index c = 0; c < g.class_count(); ++c)
    EXPECT_LE(std::abs(2 * est.class_mean[c] - expect[c]), 3 * 2 * est.class_se[c] + 2.0 / 2000) << c;
}

TEST(Chisquare, SkeletonAgreesAndControlRejects) {
  auto tol = ToleranceTable::defaults();
  auto cfg = zoo_triangle();
  auto t = skeleton_chisquare_test(cfg, 3, 20000, 2);
  EXPECT_GT(t.p_value, 1e-3);
  EXPECT_GT(t.bins, 1u);
  auto bad = cfg.with_class_alpha({3, 1, 1});
  auto r = skeleton_chisquare(cfg, 3, 20000, 2, tol, bad, true);
  EXPECT_TRUE(r.ok());

  auto two = zoo_two_cycle();
  EXPECT_EQ(skeleton_chisquare_test(two, 4, 1000, 2).statistic, 0);
}

TEST(Chisquare, TooManyBins) {
  try {
    skeleton_chisquare_test(zoo_de_bruijn(2), 12, 10, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyBins);
  }
}

TEST(Verify, MatrixTreeMutationIsCaught) {
  VerifyOptions opt;
  EXPECT_TRUE(check_matrix_tree(opt).ok());
  auto broken = [](const StarGraph& g, const EdgeVec& y, Index root) { return -tree_determinant(g, y, root); };
  EXPECT_FALSE(check_matrix_tree(opt, broken).ok());
  auto scaled = [](const StarGraph& g, const EdgeVec& y, Index root) {
    return tree_determinant(g, y, root) * (1 + 1e-6);
  };
  EXPECT_FALSE(check_matrix_tree(opt, scaled).ok());
}

TEST(Verify, ToleranceOverrideChangesOutcome) {
  VerifyOptions opt;
  EXPECT_TRUE(check_closed_form(opt).ok());
  opt.tol.set("normalization.dim1", 0);
  opt.tol.set("normalization.dim2", 0);
  EXPECT_FALSE(check_normalization(opt).ok());
}

TEST(Verify, GroupsAreDeterministic) {
  VerifyOptions opt;
  opt.seed = 11;
  EXPECT_EQ(check_decomposition(opt).to_json(false), check_decomposition(opt).to_json(false));
  EXPECT_EQ(check_invariants(opt).to_json(false), check_invariants(opt).to_json(false));
  EXPECT_TRUE(check_invariants(opt).ok());
}
