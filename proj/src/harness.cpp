#include "srw/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "srw/errw.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/rng.hpp"
#include "srw/stats.hpp"
#include "srw/vrjp.hpp"

namespace srw {

ToleranceTable ToleranceTable::defaults() {
  ToleranceTable t;
  t.values_ = {
      {"tree.relative", 1e-10},         // tree_determinant vs arborescence_sum
      {"tree.root", 1e-12},             // root independence
      {"gaussian.relative", 1e-8},      // closed form vs Gram determinant
      {"gaussian.quadrature", 1e-4},    // closed form vs direct quadrature
      {"fk.relative", 1e-12},           // gamma step, zeta ratio, Feynman-Kac
      {"normalization.dim1", 0.01},
      {"normalization.dim2", 0.02},
      {"chisquare.p_min", 1e-3},        // accept when p > this
      {"chisquare.p_reject", 1e-6},     // negative control must fall below
      {"occupation.se_factor", 3.0},    // mean within factor * SE + allowance / n
      {"occupation.allowance", 2.0},
      {"occupation.ks", 0.1},
      {"occupation.divergence", 2.0},   // max |div N(n)/n| <= this / n
      {"decomposition.abs", 1e-10},
      {"hessian.relative", 1e-5},
      {"hessian.gradient", 1e-8},
      {"hessian.excess", 1e-12},
      {"vrjp.residual", 1e-9},
      {"flow.abs", 1e-9},
  };
  return t;
}

double ToleranceTable::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::ParseError, "unknown tolerance key \"" + key + "\"");
  return it->second;
}

void ToleranceTable::set(const std::string& key, double value) {
  get(key);
  values_[key] = value;
}

void ToleranceTable::apply_override(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "tolerance override must be key=value");
  std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::ParseError, "bad tolerance value \"" + text + "\"");
  set(key, v);
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

CheckRecord& Report::add(std::string name, double statistic, double threshold, bool at_least) {
  CheckRecord r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.seed = seed;
  bool ok = at_least ? statistic >= threshold : statistic <= threshold;
  r.status = ok ? Status::Pass : Status::Fail;  // NaN fails
  checks.push_back(std::move(r));
  return checks.back();
}

CheckRecord& Report::skip(std::string name, std::string note, double statistic) {
  CheckRecord r;
  r.name = std::move(name);
  r.status = Status::Skip;
  r.statistic = statistic;
  r.seed = seed;
  r.note = std::move(note);
  checks.push_back(std::move(r));
  return checks.back();
}

void Report::append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckRecord& r) { return r.status == s; }));
}

namespace {
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}
}  // namespace

nlohmann::json Report::to_json(bool include_runtime) const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["seed"] = seed;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json r = {{"name", c.name},
                        {"status", std::string(to_string(c.status))},
                        {"statistic", number(c.statistic)},
                        {"threshold", number(c.threshold)},
                        {"seed", c.seed}};
    if (!c.note.empty()) r["note"] = c.note;
    if (include_runtime) r["runtime"] = c.runtime;
    j["checks"].push_back(std::move(r));
  }
  j["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skip", count(Status::Skip)}};
  return j;
}

nlohmann::json OccupationEstimate::to_json(const StarGraph& g) const {
  nlohmann::json j;
  j["steps"] = steps;
  j["replicates"] = replicates;
  j["classes"] = nlohmann::json::array();
  for (Index c = 0; c < g.class_count(); ++c)
    j["classes"].push_back({{"edge", g.edge_label(g.edge_class(c).representative)},
                            {"mean", class_mean[c]},
                            {"se", class_se[c]}});
  j["vertices"] = nlohmann::json::object();
  for (Index v = 0; v < g.vertex_count(); ++v) j["vertices"][g.id(v)] = vertex_mean[v];
  j["maxDivergenceResidual"] = max_divergence_residual;
  j["maxSymmetryGap"] = max_symmetry_gap;
  return j;
}

OccupationEstimate estimate_occupation(const WeightConfig& cfg, std::size_t steps, std::size_t replicates,
                                       std::uint64_t seed, Execution exec) {
  require_divergence_condition(cfg);
  const auto& g = cfg.graph();
  const std::size_t nc = g.class_count();
  const double n = static_cast<double>(steps);
  std::vector<std::vector<double>> samples(replicates, std::vector<double>(nc));
  std::vector<double> div_res(replicates), sym_gap(replicates);

  auto run = [&](long r) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(r));
    auto counts = simulate_errw_counts(cfg, steps, rng);
    std::vector<double> y(counts.begin(), counts.end());
    for (auto& v : y) v /= n;
    double d = 0, s = 0;
    for (double v : divergence(g, y)) d = std::max(d, std::abs(v));
    for (Index e = 0; e < g.edge_count(); ++e) s = std::max(s, std::abs(y[e] - y[g.mirror(e)]));
    for (Index c = 0; c < nc; ++c) {
      double sum = 0;
      for (Index e : g.edge_class(c).members) sum += y[e];
      samples[r][c] = sum / static_cast<double>(g.edge_class(c).members.size());
    }
    div_res[r] = d;
    sym_gap[r] = s;
  };
  const long m = static_cast<long>(replicates);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long r = 0; r < m; ++r) run(r);
  } else {
    for (long r = 0; r < m; ++r) run(r);
  }

  // Aggregation in replicate order, independent of completion order.
  OccupationEstimate est;
  est.steps = steps;
  est.replicates = replicates;
  est.class_mean.resize(nc);
  est.class_se.resize(nc);
  for (Index c = 0; c < nc; ++c) {
    std::vector<double> col(replicates);
    for (std::size_t r = 0; r < replicates; ++r) col[r] = samples[r][c];
    auto ms = mean_se(col);
    est.class_mean[c] = ms.mean;
    est.class_se[c] = ms.se;
  }
  est.vertex_mean = out_sums(g, class_to_edge(g, est.class_mean));
  for (std::size_t r = 0; r < replicates; ++r) {
    est.max_divergence_residual = std::max(est.max_divergence_residual, div_res[r]);
    est.max_symmetry_gap = std::max(est.max_symmetry_gap, sym_gap[r]);
  }
  est.samples = std::move(samples);
  return est;
}

Report compare_empirical_analytic(const WeightConfig& cfg, std::size_t steps, std::size_t replicates,
                                  std::uint64_t seed, const ToleranceTable& tol, const CompareOptions& opt) {
  const auto& g = cfg.graph();
  DensityParams params = DensityParams::make(opt.analytic.value_or(cfg));
  const std::size_t d = params.chart.dimension();
  if (d > 2 || d == 0)
    throw Error(ErrorCode::DimensionTooHigh, "empirical comparison needs chart dimension 1 or 2");
  auto est = estimate_occupation(cfg, steps, replicates, seed, opt.quadrature.execution);

  Report rep;
  rep.seed = seed;
  const Polytope poly = Polytope::from_chart(params.chart);
  const Integrand f = density_integrand(params);
  const double mass = integrate_polytope(poly, f, opt.quadrature).value;
  const double n = static_cast<double>(steps);
  for (std::size_t a = 0; a < d; ++a) {
    const Index cls = params.chart.coordinate_classes()[a];
    const std::string label = g.edge_label(g.edge_class(cls).representative);
    Integrand moment = [&f, a](std::span<const double> c) { return c[a] * f(c); };
    const double mean = integrate_polytope(poly, moment, opt.quadrature).value / mass;

    std::vector<double> xs(replicates);
    for (std::size_t r = 0; r < replicates; ++r) xs[r] = est.samples[r][cls];
    auto ms = mean_se(xs);
    rep.add("mean " + label, std::abs(ms.mean - mean),
            tol.get("occupation.se_factor") * ms.se + tol.get("occupation.allowance") / n)
        .note = "empirical " + std::to_string(ms.mean) + " vs quadrature " + std::to_string(mean);

    std::sort(xs.begin(), xs.end());
    auto cdf = marginal_cdf(poly, f, a, xs, opt.quadrature);
    rep.add("ks " + label, ks_distance(xs, cdf), tol.get("occupation.ks"));
  }
  rep.add("max divergence residual * n", est.max_divergence_residual * n, tol.get("occupation.divergence"));
  return rep;
}

SkeletonTest skeleton_chisquare_test(const WeightConfig& cfg, std::size_t k, std::size_t samples,
                                     std::uint64_t seed, const std::optional<WeightConfig>& oracle) {
  const WeightConfig& law = oracle.value_or(cfg);
  std::vector<WeightedPath> paths;
  try {
    paths = enumerate_paths(law, k, 1000);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeLimit) throw;
    throw Error(ErrorCode::TooManyBins, "more than 1000 paths of length " + std::to_string(k));
  }
  std::map<std::vector<Index>, std::size_t> bin;
  for (std::size_t b = 0; b < paths.size(); ++b) bin[paths[b].vertices] = b;

  std::vector<std::size_t> sample_bin(samples);
  const std::size_t outside = paths.size();
  const long m = static_cast<long>(samples);
#pragma omp parallel for schedule(static)
  for (long s = 0; s < m; ++s) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(s));
    auto sk = annealed_skeleton(cfg, k, rng);
    auto it = bin.find(sk);
    sample_bin[s] = it == bin.end() ? outside : it->second;
  }
  std::vector<double> observed(paths.size() + 1, 0.0);
  for (auto b : sample_bin) observed[b] += 1;

  SkeletonTest t;
  t.bins = paths.size();
  const double total = static_cast<double>(samples);
  for (std::size_t b = 0; b < paths.size(); ++b) {
    double expected = total * paths[b].probability.get_d();
    t.statistic += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  // A sample outside the support of the oracle is an infinite discrepancy.
  if (observed[outside] > 0) t.statistic = std::numeric_limits<double>::infinity();
  t.dof = static_cast<double>(paths.size()) - 1;
  t.p_value = std::isinf(t.statistic) ? 0.0 : chisquare_pvalue(t.statistic, t.dof);
  return t;
}

Report skeleton_chisquare(const WeightConfig& cfg, std::size_t k, std::size_t samples, std::uint64_t seed,
                          const ToleranceTable& tol, const std::optional<WeightConfig>& oracle, bool expect_reject) {
  Report rep;
  rep.seed = seed;
  auto t = skeleton_chisquare_test(cfg, k, samples, seed, oracle);
  std::string note = "chi2 " + std::to_string(t.statistic) + ", dof " + std::to_string(static_cast<long>(t.dof));
  if (expect_reject)
    rep.add("chisquare p (rejects)", t.p_value, tol.get("chisquare.p_reject")).note = note;
  else
    rep.add("chisquare p", t.p_value, tol.get("chisquare.p_min"), true).note = note;
  return rep;
}

}  // namespace srw
