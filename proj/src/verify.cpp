#include "srw/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "srw/builders.hpp"
#include "srw/errw.hpp"
#include "srw/flows.hpp"
#include "srw/graph_io.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/rng.hpp"
#include "srw/vrjp.hpp"
#include "srw/zoo.hpp"

namespace srw {

namespace {

using Clock = std::chrono::steady_clock;

// Stream for check `tag` (criterion number * 100 + graph index).
Rng stream(const VerifyOptions& opt, std::uint64_t tag) { return make_stream(opt.seed, tag); }

EdgeVec random_l1(const FlowChart& chart, Rng& rng) { return chart.to_l1(sample_chart_point(chart, rng)); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Report new_report(const VerifyOptions& opt) {
  Report r;
  r.seed = opt.seed;
  return r;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

Report check_closed_form(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const std::vector<std::pair<std::string, WeightConfig>> cases = {
      {"triangle", zoo_triangle()}, {"two_cycle", zoo_two_cycle()}, {"de_bruijn_2_2", zoo_de_bruijn(2)}};
  for (const auto& [name, cfg] : cases) {
    std::size_t mismatches = 0, checked = 0, bad_totals = 0;
    for (std::size_t len = 0; len <= 6; ++len) {
      Rational total = 0;
      for (const auto& wp : enumerate_paths(cfg, len)) {
        auto rec = PathRecord::from_vertices(cfg.graph(), wp.vertices);
        Rational seq = path_probability_sequential(cfg, rec);
        Rational closed = path_probability_closed_form(cfg, rec, true);
        mismatches += seq != closed;
        ++checked;
        total += seq;
      }
      bad_totals += total != 1;
    }
    rep.add(name + " closed form mismatches", static_cast<double>(mismatches), 0).note =
        std::to_string(checked) + " paths of length <= 6";
    rep.add(name + " path law totals != 1", static_cast<double>(bad_totals), 0);
  }
  auto pinned = [&](const std::string& name, const WeightConfig& cfg, const std::string& path, Rational want) {
    auto rec = parse_path(cfg.graph(), path);
    Rational seq = path_probability_sequential(cfg, rec), closed = path_probability_closed_form(cfg, rec);
    double off = std::abs(Rational(seq - want).get_d()) + std::abs(Rational(closed - want).get_d());
    rep.add(name + " P(" + path + ")", off + (seq != want || closed != want ? 1.0 : 0.0), 0).note =
        "sequential " + format_rational(seq) + ", closed " + format_rational(closed);
  };
  pinned("triangle", zoo_triangle(), "1,2,3,1,3", Rational(1, 36));
  pinned("path", zoo_path(), "b,a,b,c", Rational(1, 8));
  return rep;
}

Report check_exchangeability(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const auto cfg = zoo_triangle();
  std::size_t violations = 0, groups = 0, pairs = 0;
  for (std::size_t len = 1; len <= 8; ++len) {
    std::map<std::tuple<std::vector<std::uint64_t>, Index>, std::vector<Rational>> by_key;
    for (const auto& wp : enumerate_paths(cfg, len)) {
      auto rec = PathRecord::from_vertices(cfg.graph(), wp.vertices);
      by_key[{rec.edge_counts, rec.back()}].push_back(path_probability_sequential(cfg, rec));
    }
    for (const auto& [key, ps] : by_key) {
      ++groups;
      pairs += ps.size() * (ps.size() - 1) / 2;
      for (const auto& p : ps) violations += p != ps.front();
    }
  }
  rep.add("triangle exchangeability violations", static_cast<double>(violations), 0).note =
      std::to_string(groups) + " classes of equal counts, " + std::to_string(pairs) + " pairs";
  return rep;
}

Report check_matrix_tree(const VerifyOptions& opt, const TreeFn& tree_in) {
  Report rep = new_report(opt);
  const TreeFn tree = tree_in ? tree_in : TreeFn(tree_determinant);
  std::uint64_t tag = 300;
  for (const auto& z : graph_zoo()) {
    ++tag;
    const auto& g = z.config.graph();
    if (g.vertex_count() > 5) continue;
    const auto chart = FlowChart::build(g);
    Rng rng = stream(opt, tag);
    double worst = 0, worst_root = 0;
    for (int s = 0; s < 50; ++s) {
      EdgeVec y = random_l1(chart, rng);
      const double d0 = tree(g, y, 0);
      worst = std::max(worst, rel(d0, arborescence_sum(g, y, 0)));
      for (Index r = 1; r < g.vertex_count(); ++r) worst_root = std::max(worst_root, rel(tree(g, y, r), d0));
    }
    rep.add(z.name + " tree determinant vs arborescences", worst, opt.tol.get("tree.relative"));
    rep.add(z.name + " root independence", worst_root, opt.tol.get("tree.root"));
  }
  return rep;
}

namespace {

// Integral of exp(-Q_w(x, x) / 4) over L0 by tensor quadrature on a box in chart coordinates.
double gaussian_by_quadrature(const StarGraph& g, const EdgeVec& w, const FlowChart& chart, const VerifyOptions& opt) {
  const std::size_t d = chart.dimension();
  Eigen::MatrixXd a = q_gram(g, w, chart);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const double radius = std::sqrt(4 * 40 / es.eigenvalues().minCoeff());
  Polytope box;
  box.dimension = d;
  const Rational r = rational_from_double(radius);
  for (std::size_t k = 0; k < d; ++k)
    for (int sgn : {1, -1}) {
      std::vector<Rational> row(d, Rational(0));
      row[k] = sgn;
      box.a.push_back(row);
      box.b.push_back(r);
    }
  Integrand f = [&](std::span<const double> c) {
    EdgeVec x(g.edge_count(), 0.0);
    for (std::size_t k = 0; k < d; ++k)
      for (Index e = 0; e < x.size(); ++e) x[e] += c[k] * chart.directions()[k][e];
    return std::exp(-q_bilinear(g, w, x, x) / 4);
  };
  QuadratureOptions q = opt.quadrature;
  q.order = 96;
  q.grading = 1.0;
  return integrate_polytope(box, f, q).value * std::exp(chart.log_reference_factor());
}

}  // namespace

Report check_gaussian(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const std::vector<std::pair<std::string, WeightConfig>> cases = {{"triangle", zoo_triangle()},
                                                                   {"de_bruijn_2_2", zoo_de_bruijn(2)}};
  std::uint64_t tag = 400;
  for (const auto& [name, cfg] : cases) {
    const auto& g = cfg.graph();
    const auto chart = FlowChart::build(g);
    Rng rng = stream(opt, ++tag);
    double worst = 0, ratio = 0;
    for (int s = 0; s < 50; ++s) {
      EdgeVec w = random_l1(chart, rng);
      double closed = gaussian_integral_closed(g, w), gram = gaussian_integral_gram(g, w, chart);
      worst = std::max(worst, rel(gram, closed));
      ratio = gram / closed;
    }
    rep.add(name + " closed form vs Gram determinant", worst, opt.tol.get("gaussian.relative")).note =
        "last gram/closed ratio " + fmt(ratio);
  }
  {
    const auto cfg = zoo_triangle();
    const auto& g = cfg.graph();
    const auto chart = FlowChart::build(g);
    Rng rng = stream(opt, 450);
    double worst = 0;
    for (const EdgeVec& w : {chart.anchor(), random_l1(chart, rng)})
      worst = std::max(worst, rel(gaussian_by_quadrature(g, w, chart, opt), gaussian_integral_closed(g, w)));
    rep.add("triangle closed form vs quadrature", worst, opt.tol.get("gaussian.quadrature"));
  }
  return rep;
}

Report check_feynman_kac(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const double tol = opt.tol.get("fk.relative");
  std::uint64_t tag = 500;
  for (const auto& z : graph_zoo()) {
    ++tag;
    if (!z.admissible) continue;
    const auto& g = z.config.graph();
    const bool in_hypothesis = g.self_paired_count() == 0;
    const auto chart = FlowChart::build(g);
    Rng rng = stream(opt, tag);
    double gamma_worst = 0, zeta_worst = 0, fk_worst = 0, fk2_worst = 0;
    for (Index e : g.out_edges(z.config.start())) gamma_worst = std::max(gamma_worst, gamma_step_residual(z.config, e));
    for (int s = 0; s < 20; ++s) {
      EdgeVec y = random_l1(chart, rng);
      for (Index e : g.out_edges(z.config.start()))
        zeta_worst = std::max(zeta_worst, zeta_ratio_residual(z.config, y, e));
      fk_worst = std::max(fk_worst, feynman_kac_residual(z.config, y));
      fk2_worst = std::max(fk2_worst, feynman_kac_two_step_residual(z.config, y));
    }
    if (in_hypothesis) {
      rep.add(z.name + " gamma step identity", gamma_worst, tol);
      rep.add(z.name + " zeta ratio identity", zeta_worst, tol);
      rep.add(z.name + " Feynman-Kac residual", fk_worst, tol);
      rep.add(z.name + " two-step Feynman-Kac residual", fk2_worst, tol);
    } else {
      const std::string why = "self-paired classes reinforce by 2; identity not expected";
      rep.skip(z.name + " gamma step identity", why, gamma_worst);
      rep.skip(z.name + " zeta ratio identity", why, zeta_worst);
      rep.skip(z.name + " Feynman-Kac residual", why, fk_worst);
    }
  }
  return rep;
}

Report check_normalization(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const std::vector<std::tuple<std::string, WeightConfig, std::string>> cases = {
      {"path", zoo_path(), "normalization.dim1"}, {"triangle", zoo_triangle(), "normalization.dim2"}};
  for (const auto& [name, cfg, key] : cases) {
    NormalizationOptions no;
    no.quadrature = opt.quadrature;
    auto r = normalization_integral(DensityParams::make(cfg), no);
    rep.add(name + " |integral - 1|", std::abs(r.value - 1), opt.tol.get(key)).note =
        "integral " + fmt(r.value) + ", error estimate " + fmt(r.error_estimate) + ", " + r.method;
  }
  return rep;
}

Report check_annealing(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const auto cfg = zoo_triangle();
  auto ok = skeleton_chisquare(cfg, 3, opt.skeleton_samples, make_stream(opt.seed, 700)(), opt.tol);
  ok.checks[0].name = "triangle annealed skeleton " + ok.checks[0].name;
  rep.append(ok);

  auto alpha = cfg.class_alpha();
  alpha[0] *= 3;
  auto bad = skeleton_chisquare(cfg.with_class_alpha(alpha), 3, opt.skeleton_samples, make_stream(opt.seed, 701)(),
                                opt.tol, cfg, true);
  bad.checks[0].name = "triangle perturbed control " + bad.checks[0].name;
  rep.append(bad);

  auto two = skeleton_chisquare(zoo_two_cycle(), 3, 1000, make_stream(opt.seed, 702)(), opt.tol);
  two.checks[0].name = "two_cycle " + two.checks[0].name;
  rep.append(two);
  for (auto& c : rep.checks) c.seed = opt.seed;
  return rep;
}

Report check_occupation_law(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const std::size_t n = opt.occupation_steps, m = opt.occupation_replicates;
  struct Case {
    std::string name;
    WeightConfig cfg;
    WeightConfig wrong;  // density with a mismatched start vertex
  };
  const std::vector<Case> cases = {{"triangle", zoo_triangle("1"), zoo_triangle("2")},
                                   {"path", zoo_path("b"), zoo_path("a")}};
  std::uint64_t tag = 800;
  for (const auto& c : cases) {
    const std::uint64_t seed = make_stream(opt.seed, ++tag)();
    CompareOptions co;
    co.quadrature = opt.quadrature;
    auto r = compare_empirical_analytic(c.cfg, n, m, seed, opt.tol, co);
    for (auto& rec : r.checks) rec.name = c.name + " " + rec.name;
    rep.append(r);

    co.analytic = c.wrong;
    auto neg = compare_empirical_analytic(c.cfg, n, m, seed, opt.tol, co);
    double worst = 0;
    for (const auto& rec : neg.checks)
      if (rec.name.rfind("mean", 0) == 0) worst = std::max(worst, rec.statistic / rec.threshold);
    rep.add(c.name + " mismatched start control: mean discrepancy / allowance", worst, 1.0, true).note =
        "density with i0 = " + c.wrong.graph().id(c.wrong.start()) + " must be rejected";
  }
  for (auto& c : rep.checks) c.seed = opt.seed;
  return rep;
}

Report check_decomposition(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  const double tol = opt.tol.get("decomposition.abs");
  std::uint64_t tag = 900;
  for (const auto& z : graph_zoo()) {
    ++tag;
    if (!z.admissible) continue;
    const auto& g = z.config.graph();
    const auto chart = FlowChart::build(g);
    Rng rng = stream(opt, tag);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double recon = 0, divz = 0, sumz = 0, qzw = 0, qzy = 0, qwy = 0, qww = 0;
    for (int s = 0; s < 100; ++s) {
      EdgeVec y = random_l1(chart, rng);
      std::vector<double> xc(g.class_count());
      for (auto& v : xc) v = unif(rng);
      EdgeVec x = class_to_edge(g, xc);
      auto d = orthogonal_decompose(g, y, x);
      for (Index e = 0; e < x.size(); ++e)
        recon = std::max(recon, std::abs(x[e] - d.lambda * y[e] - d.omega[e] - d.z[e]));
      for (double v : divergence(g, d.z)) divz = std::max(divz, std::abs(v));
      sumz = std::max(sumz, std::abs(std::accumulate(d.z.begin(), d.z.end(), 0.0)));
      qzw = std::max(qzw, std::abs(q_bilinear(g, y, d.z, d.omega)));
      qzy = std::max(qzy, std::abs(q_bilinear(g, y, d.z, y)));
      qwy = std::max(qwy, std::abs(q_bilinear(g, y, d.omega, y)));
      double hv = 0;
      for (Index i = 0; i < g.vertex_count(); ++i) hv += d.h[i] * d.v[i];
      qww = std::max(qww, std::abs(q_bilinear(g, y, d.omega, d.omega) + 2 * hv));
    }
    rep.add(z.name + " reconstruction", recon, tol);
    rep.add(z.name + " div(z)", divz, tol);
    rep.add(z.name + " sum(z)", sumz, tol);
    rep.add(z.name + " Q(z, omega)", qzw, tol);
    rep.add(z.name + " Q(z, Y)", qzy, tol);
    rep.add(z.name + " Q(omega, Y)", qwy, tol);
    rep.add(z.name + " Q(omega, omega) + 2<h, v>", qww, tol);
  }
  return rep;
}

Report check_hessian(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  std::uint64_t tag = 1000;
  for (const auto& z : graph_zoo()) {
    ++tag;
    if (!z.admissible) continue;
    const auto& g = z.config.graph();
    const auto chart = FlowChart::build(g);
    if (chart.dimension() == 0) continue;
    Rng rng = stream(opt, tag);
    auto h = eta_hessian_check(g, chart.anchor(), chart, rng);
    if (g.self_paired_count() == 0) {
      rep.add(z.name + " Hessian vs -Q/2", h.residual, opt.tol.get("hessian.relative"));
      rep.add(z.name + " gradient at beta", h.gradient_norm, opt.tol.get("hessian.gradient"));
      rep.add(z.name + " max log eta excess over beta", h.max_excess, opt.tol.get("hessian.excess"));
    } else {
      const std::string why = "self-paired classes enter eta once but Q twice";
      rep.skip(z.name + " Hessian vs -Q/2", why, h.residual);
      rep.skip(z.name + " gradient at beta", why, h.gradient_norm);
    }
  }
  return rep;
}

Report check_bases(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  for (const auto& z : graph_zoo()) {
    const auto& g = z.config.graph();
    const double expected_dim =
        static_cast<double>(g.class_count()) - static_cast<double>(g.v1().size()) - 1.0;
    rep.add(z.name + " |dim L1 - (|E~| - |V1| - 1)|", std::abs(static_cast<double>(dim_l0(g)) - expected_dim), 0)
        .note = "dim L1 = " + std::to_string(dim_l0(g));
    if (g.class_count() > 8) continue;
    auto bases = enumerate_tree_bases(g);
    std::size_t rank_fail = 0;
    for (const auto& b : bases) rank_fail += !is_tree_basis(g, b.classes).full_rank;
    rep.add(z.name + " tree bases failing the rank check", static_cast<double>(rank_fail), 0).note =
        std::to_string(bases.size()) + " bases";
    if (bases.empty()) continue;

    // L0 bases: B minus any class e0 that leaves a basis, deduplicated by coordinate set.
    struct L0Basis {
      std::vector<Index> coords;
      Rational mass;
    };
    std::vector<L0Basis> l0;
    std::set<std::vector<Index>> seen;
    for (const auto& b : bases)
      for (Index e0 : b.classes) {
        std::vector<Index> coords;
        for (Index c : b.classes)
          if (c != e0) coords.push_back(c);
        if (!dual_vectors(g, FlowSpace::L0, coords) || !seen.insert(coords).second) continue;
        l0.push_back({coords, dropped_class_mass(g, b, e0)});
      }
    std::size_t l0_bad = 0, l_bad = 0, norm_bad = 0, pairs = 0;
    std::set<std::string> seen_dets;
    for (std::size_t i = 0; i < bases.size(); ++i)
      for (std::size_t j = i + 1; j < bases.size(); ++j)
        l_bad += abs(basis_change_determinant(g, bases[i].classes, bases[j].classes, FlowSpace::L)) != 1;
    for (std::size_t i = 0; i < l0.size(); ++i)
      for (std::size_t j = i + 1; j < l0.size(); ++j) {
        ++pairs;
        Rational d = basis_change_determinant(g, l0[i].coords, l0[j].coords, FlowSpace::L0);
        if (abs(d) != 1) {
          ++l0_bad;
          seen_dets.insert(format_rational(abs(d)));
        }
        norm_bad += abs(d * l0[i].mass / l0[j].mass) != 1;
      }
    std::string dets;
    for (const auto& t : seen_dets) dets += (dets.empty() ? "" : " ") + t;
    rep.add(z.name + " L0 basis changes with |det| != 1", static_cast<double>(l0_bad), 0).note =
        std::to_string(l0.size()) + " bases, " + std::to_string(pairs) + " pairs" +
        (dets.empty() ? "" : "; |det| values " + dets);
    rep.skip(z.name + " L basis changes with |det| != 1", "information", static_cast<double>(l_bad));
    rep.skip(z.name + " mass-normalised L0 changes with |det| != 1", "information", static_cast<double>(norm_bad));
  }
  return rep;
}

Report check_invariants(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  std::uint64_t tag = 1300;
  for (const auto& z : graph_zoo()) {
    ++tag;
    const auto& cfg = z.config;
    const auto& g = cfg.graph();
    rep.add(z.name + " validation violations", static_cast<double>(validate_star_graph(g.to_spec()).violations.size()),
            0);
    const std::string text = canonical_graph_text(cfg);
    rep.add(z.name + " graph file round trip", canonical_graph_text(parse_graph_document(text)) == text ? 0 : 1, 0);

    Rng rng = stream(opt, tag);
    Conductances w = sample_class_conductances(cfg, rng);
    auto traj = simulate_vrjp(g, w, cfg.start(), Horizon::jump_count(200), rng);
    double total = std::accumulate(traj.state.local_time.begin(), traj.state.local_time.end(), 0.0);
    rep.add(z.name + " vrjp local time conservation", rel(total, traj.state.clock), opt.tol.get("vrjp.residual"));
    rep.add(z.name + " vrjp hazard inversion residual", traj.max_residual, opt.tol.get("vrjp.residual"));

    if (!z.admissible) {
      rep.skip(z.name + " occupation and density", "divergence condition fails for this alpha");
      continue;
    }
    const std::size_t n = 1000;
    auto est = estimate_occupation(cfg, n, 20, make_stream(opt.seed, tag + 50)());
    rep.add(z.name + " occupation divergence residual * n", est.max_divergence_residual * static_cast<double>(n),
            opt.tol.get("occupation.divergence"));
    auto ymean = class_to_edge(g, est.class_mean);
    rep.add(z.name + " occupation mass - 1", std::abs(std::accumulate(ymean.begin(), ymean.end(), 0.0) - 1), 1e-12);

    const auto chart = FlowChart::build(g);
    const auto& a = chart.anchor();
    double flow = std::abs(std::accumulate(a.begin(), a.end(), 0.0) - 1);
    for (double v : divergence(g, a)) flow = std::max(flow, std::abs(v));
    for (Index e = 0; e < g.edge_count(); ++e) flow = std::max(flow, std::abs(a[e] - a[g.mirror(e)]));
    rep.add(z.name + " chart anchor in L1", flow, opt.tol.get("flow.abs"));
    double logz = log_density(cfg, a).total;
    rep.add(z.name + " log density finite at anchor", std::isfinite(logz) ? 0 : 1, 0).note = "log zeta " + fmt(logz);
  }
  {
    Rng rng = stream(opt, 1399);
    auto cfg = zoo_two_cycle();
    auto counts = simulate_errw_counts(cfg, 1000, rng);
    rep.add("two_cycle forced alternation |N_12 - N_21|",
            std::abs(static_cast<double>(counts[0]) - static_cast<double>(counts[1])), 0);
  }
  return rep;
}

const std::vector<SuiteEntry>& suite_entries() {
  static const std::vector<SuiteEntry> entries = {
      {"closed_form", check_closed_form},
      {"exchangeability", check_exchangeability},
      {"matrix_tree", [](const VerifyOptions& o) { return check_matrix_tree(o); }},
      {"gaussian", check_gaussian},
      {"feynman_kac", check_feynman_kac},
      {"normalization", check_normalization},
      {"annealing", check_annealing},
      {"occupation_law", check_occupation_law},
      {"decomposition", check_decomposition},
      {"hessian", check_hessian},
      {"bases", check_bases},
      {"invariants", check_invariants},
  };
  return entries;
}

Report verify_suite(const VerifyOptions& opt) {
  Report rep = new_report(opt);
  for (const auto& entry : suite_entries()) {
    auto t0 = Clock::now();
    Report r;
    try {
      r = entry.run(opt);
    } catch (const std::exception& e) {
      r = new_report(opt);
      r.add("error", 1, 0).note = e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    for (auto& c : r.checks) {
      c.name = entry.group + ": " + c.name;
      c.runtime = secs;
    }
    rep.append(r);
  }
  return rep;
}

}  // namespace srw
