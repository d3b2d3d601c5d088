#include <gtest/gtest.h>

#include <cmath>

#include "srw/rng.hpp"
#include "srw/stats.hpp"
#include "srw/vrjp.hpp"
#include "srw/zoo.hpp"

using namespace srw;

TEST(Hazard, ClosedFormInversions) {
  // W (e^s - 1) = 1 and (e^{2s} - 1)/2 = 1.
  EXPECT_NEAR(solve_hazard(1, 0, 1), std::log(2.0), 1e-13);
  EXPECT_NEAR(solve_hazard(0, 1, 1), 0.5 * std::log(3.0), 1e-13);
}

TEST(Hazard, MixedCaseInverts) {
  for (double t : {1e-6, 0.3, 1.0, 5.0, 40.0}) {
    double s = solve_hazard(0.7, 1.9, t);
    EXPECT_GE(s, 0);
    EXPECT_LE(std::abs(hazard(0.7, 1.9, s) - t), 1e-12 * std::max(1.0, t));
  }
  EXPECT_EQ(solve_hazard(1, 1, 0), 0);
}

TEST(Conductances, GammaOneIsExponential) {
  auto cfg = zoo_path();
  Rng rng = make_stream(11, 0);
  std::vector<double> x;
  for (int k = 0; k < 50000; ++k) {
    auto w = sample_class_conductances(cfg, rng);
    x.insert(x.end(), w.per_class.begin(), w.per_class.end());
  }
  auto m = mean_se(x);
  EXPECT_LE(std::abs(m.mean - 1.0), 3 * m.se);
}

TEST(Conductances, SameSeedSameDraws) {
  auto cfg = zoo_de_bruijn(2);
  Rng a = make_stream(5, 2), b = make_stream(5, 2);
  EXPECT_EQ(sample_class_conductances(cfg, a).per_class, sample_class_conductances(cfg, b).per_class);
}

TEST(UTransform, Examples) {
  auto cfg = zoo_triangle();
  const auto& g = cfg.graph();
  Conductances w{{1, 1, 1}};
  auto same = u_transform(g, w, VertexVec{0, 0, 0});
  EXPECT_EQ(same.per_class, w.per_class);
  auto t = u_transform(g, w, VertexVec{1, 2, 0});
  EXPECT_NEAR(t.edge(g, *g.find_edge(0, 1)), std::exp(3.0), 1e-12);
}

TEST(UTransform, KeepsClassSymmetry) {
  auto cfg = zoo_amnesia();
  const auto& g = cfg.graph();
  Rng rng = make_stream(3, 0);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    auto w = sample_class_conductances(cfg, rng);
    VertexVec u(g.vertex_count());
    for (auto& v : u) v = n(rng);
    auto t = u_transform(g, w, u);
    for (Index e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edge(e);
      double direct = w.edge(g, e) * std::exp(u[ed.tail] + u[g.star(ed.head)]);
      ASSERT_NEAR(t.edge(g, e), direct, 1e-12 * direct);
    }
  }
}

TEST(Holding, ResidualAndSupport) {
  auto cfg = zoo_de_bruijn(2);
  const auto& g = cfg.graph();
  Rng rng = make_stream(8, 0);
  auto w = sample_class_conductances(cfg, rng);
  LocalTimeState t(g.vertex_count());
  for (Index i = 0; i < g.vertex_count(); ++i) t.local_time[i] = 0.1 * static_cast<double>(i);
  for (int k = 0; k < 1000; ++k) {
    auto d = sample_holding_time(g, w, t, 0, rng);
    EXPECT_GT(d.sojourn, 0);
    EXPECT_LE(d.residual, 1e-12);
    EXPECT_EQ(g.edge(d.edge).tail, 0u);
    EXPECT_EQ(g.edge(d.edge).head, d.destination);
  }
}

TEST(Vrjp, SwapTwoCycleAlternates) {
  auto cfg = zoo_two_cycle();
  Rng rng = make_stream(1, 0);
  auto w = sample_class_conductances(cfg, rng);
  auto tr = simulate_vrjp(cfg.graph(), w, cfg.start(), Horizon::jump_count(6), rng);
  EXPECT_EQ(tr.vertices, (std::vector<Index>{0, 1, 0, 1, 0, 1, 0}));
  auto sk = annealed_skeleton(cfg, 5, rng);
  EXPECT_EQ(sk, (std::vector<Index>{0, 1, 0, 1, 0, 1}));
}

TEST(Vrjp, LocalTimeConservation) {
  auto cfg = zoo_amnesia();
  Rng rng = make_stream(4, 0);
  auto w = sample_class_conductances(cfg, rng);
  auto tr = simulate_vrjp(cfg.graph(), w, cfg.start(), Horizon::until(3.0), rng);
  double total = 0;
  for (double v : tr.state.local_time) total += v;
  EXPECT_NEAR(total, 3.0, 1e-9);
  EXPECT_NEAR(tr.state.clock, 3.0, 1e-12);
  for (std::size_t k = 1; k < tr.times.size(); ++k) EXPECT_LT(tr.times[k - 1], tr.times[k]);
  EXPECT_LE(tr.max_residual, 1e-12);
}

TEST(Vrjp, FirstJumpProportionalToConductance) {
  auto cfg = zoo_triangle();
  const auto& g = cfg.graph();
  Conductances w{{1, 2, 3}};  // classes 12, 13, 23
  const int n = 100000;
  double hits2 = 0;
  for (int k = 0; k < n; ++k) {
    Rng rng = make_stream(21, static_cast<std::uint64_t>(k));
    auto tr = simulate_vrjp(g, w, 0, Horizon::jump_count(1), rng);
    hits2 += tr.vertices[1] == 1 ? 1 : 0;
  }
  const double e2 = n / 3.0, e3 = 2 * n / 3.0;
  double stat = (hits2 - e2) * (hits2 - e2) / e2 + (n - hits2 - e3) * (n - hits2 - e3) / e3;
  EXPECT_GT(chisquare_pvalue(stat, 1), 1e-3);
}
