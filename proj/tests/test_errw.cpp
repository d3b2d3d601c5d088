#include <gtest/gtest.h>

#include "srw/errw.hpp"
#include "srw/rng.hpp"
#include "srw/zoo.hpp"

using namespace srw;

namespace {

std::map<std::string, Rational> law(const ReinforcedState& s) {
  std::map<std::string, Rational> m;
  for (const auto& t : transition_distribution(s)) m[s.config().graph().id(t.to)] = t.probability;
  return m;
}

}  // namespace

TEST(FProduct, Values) {
  EXPECT_EQ(f_product(1, 1, 0), 1);
  EXPECT_EQ(f_product(2, 2, 2), 8);
  EXPECT_EQ(f_product(1, 1, 3), 6);
  EXPECT_EQ(f_product(Rational(1, 2), 1, 2), Rational(3, 4));
}

TEST(Transition, Triangle) {
  auto cfg = zoo_triangle();
  ReinforcedState s(cfg);
  EXPECT_EQ(law(s), (std::map<std::string, Rational>{{"2", Rational(1, 2)}, {"3", Rational(1, 2)}}));
  s.advance(*cfg.graph().find_edge(0, 1));
  EXPECT_EQ(law(s), (std::map<std::string, Rational>{{"1", Rational(2, 3)}, {"3", Rational(1, 3)}}));
}

TEST(Transition, SwapTwoCycle) {
  ReinforcedState s(zoo_two_cycle());
  EXPECT_EQ(law(s), (std::map<std::string, Rational>{{"2", Rational(1)}}));
}

TEST(Simulate, SwapTwoCycleAlternates) {
  auto cfg = zoo_two_cycle();
  Rng rng = make_stream(1, 0);
  EXPECT_EQ(format_path(cfg.graph(), simulate_errw(cfg, 4, rng)), "1,2,1,2,1");
}

TEST(Simulate, SameSeedSamePath) {
  auto cfg = zoo_triangle();
  Rng a = make_stream(42, 3), b = make_stream(42, 3);
  EXPECT_EQ(simulate_errw(cfg, 200, a).vertices, simulate_errw(cfg, 200, b).vertices);
}

TEST(Simulate, PairBalanceAlongRun) {
  // alpha_i^<-> = alpha_{i*}^<-> at every step.
  for (auto cfg : {zoo_de_bruijn(2), zoo_amnesia(), zoo_rwde_glued(), zoo_two_cycle()}) {
    const auto& g = cfg.graph();
    Rng rng = make_stream(9, 0);
    ReinforcedState s(cfg);
    for (int n = 0; n < 300; ++n) {
      std::vector<Rational> w(g.edge_count());
      for (Index e = 0; e < w.size(); ++e) w[e] = s.weight(e);
      auto out = out_sums(g, w), in = in_sums(g, w);
      for (Index i = 0; i < g.vertex_count(); ++i) ASSERT_EQ(out[i] + in[i], out[g.star(i)] + in[g.star(i)]);
      auto t = transition_distribution(s);
      double u = uniform_open(rng), acc = 0;
      Index pick = t.back().edge;
      for (const auto& x : t)
        if ((acc += x.probability.get_d()) > u) {
          pick = x.edge;
          break;
        }
      s.advance(pick);
    }
  }
}

TEST(Sequential, PinnedValues) {
  auto tri = zoo_triangle();
  EXPECT_EQ(path_probability_sequential(tri, parse_path(tri.graph(), "1,2,3,1,3")), Rational(1, 36));
  EXPECT_EQ(path_probability_sequential(tri, parse_path(tri.graph(), "1,3,1,2,3")), Rational(1, 36));
  auto two = zoo_two_cycle();
  EXPECT_EQ(path_probability_sequential(two, parse_path(two.graph(), "1,2,1")), 1);
  auto path = zoo_path();
  EXPECT_EQ(path_probability_sequential(path, parse_path(path.graph(), "b,a,b,c")), Rational(1, 8));
}

TEST(Sequential, InvalidPaths) {
  auto tri = zoo_triangle();
  EXPECT_THROW(path_probability_sequential(tri, parse_path(tri.graph(), "2,1")), Error);
  EXPECT_THROW(parse_path(tri.graph(), "1,1"), Error);
  EXPECT_THROW(parse_path(tri.graph(), "1,x"), Error);
}

TEST(Sequential, TotalMassIsOne) {
  for (const auto& z : graph_zoo())
    for (std::size_t n = 0; n <= 5; ++n) {
      Rational total = 0;
      for (const auto& p : enumerate_paths(z.config, n)) total += p.probability;
      EXPECT_EQ(total, 1) << z.name << " n=" << n;
    }
}

TEST(Beta, Values) {
  auto tri = zoo_triangle();
  EXPECT_EQ(beta_vector(tri), (std::vector<Rational>{2, 3, 3}));
  auto path = zoo_path();
  EXPECT_EQ(beta_vector(path), (std::vector<Rational>{2, 2, 2}));
  auto two = zoo_two_cycle();
  EXPECT_EQ(beta_vector(two)[two.graph().require("1")], 1);
}

TEST(ClosedForm, Examples) {
  auto tri = zoo_triangle();
  EXPECT_EQ(path_probability_closed_form(tri, parse_path(tri.graph(), "1,2,3,1,3")), Rational(1, 36));
  auto path = zoo_path();
  EXPECT_EQ(path_probability_closed_form(path, parse_path(path.graph(), "b,a,b,c")), Rational(1, 8));
  auto two = zoo_two_cycle();
  EXPECT_EQ(path_probability_closed_form(two, parse_path(two.graph(), "1,2,1")), 1);
}

TEST(ClosedForm, LoopsNeedOptIn) {
  auto db = zoo_de_bruijn(2);
  auto p = parse_path(db.graph(), "00,00,01");
  EXPECT_THROW(path_probability_closed_form(db, p), Error);
  EXPECT_EQ(path_probability_closed_form(db, p, true), path_probability_sequential(db, p));
}

TEST(ClosedForm, MatchesOracleOnAdmissibleZoo) {
  for (const auto& z : graph_zoo()) {
    if (!z.admissible) continue;
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& p : enumerate_paths(z.config, n)) {
        auto rec = PathRecord::from_vertices(z.config.graph(), p.vertices);
        ASSERT_EQ(path_probability_closed_form(z.config, rec, true), p.probability) << z.name;
      }
  }
}

TEST(ClosedForm, RequiresDivergenceCondition) {
  auto two = zoo_two_cycle();
  auto bad = two.with_start(two.graph().require("2"));
  EXPECT_THROW(path_probability_closed_form(bad, parse_path(bad.graph(), "2,1")), Error);
}

TEST(Posterior, CountsAndChaining) {
  auto tri = zoo_triangle();
  const auto& g = tri.graph();
  auto up = posterior_update(tri, parse_path(g, "1,2"));
  EXPECT_EQ(up.class_alpha(), (std::vector<Rational>{2, 1, 1}));
  EXPECT_EQ(g.id(up.start()), "2");
  EXPECT_TRUE(check_divergence_condition(up));

  auto two_step = posterior_update(posterior_update(tri, parse_path(g, "1,2,3")), parse_path(g, "3,1,3"));
  auto one_step = posterior_update(tri, parse_path(g, "1,2,3,1,3"));
  EXPECT_EQ(two_step.class_alpha(), one_step.class_alpha());
  EXPECT_EQ(two_step.start(), one_step.start());

  // Predictive law after a path equals the sequential state law.
  ReinforcedState s(tri);
  for (Index v : {1, 2}) s.advance(*g.find_edge(s.current(), v));
  EXPECT_EQ(law(s), law(ReinforcedState(posterior_update(tri, parse_path(g, "1,2,3")))));
}

TEST(Posterior, SelfPairedIncrementsByTwo) {
  auto two = zoo_two_cycle();
  auto up = posterior_update(two, parse_path(two.graph(), "1,2"));
  EXPECT_EQ(up.alpha(*two.graph().find_edge(0, 1)), 3);
  EXPECT_TRUE(check_divergence_condition(up));
}
