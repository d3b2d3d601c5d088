#include "srw/mixing_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "srw/errw.hpp"

namespace srw {

namespace {

double lgam(double x) { return boost::math::lgamma(x); }

WeightConfig step_config(const WeightConfig& cfg, Index edge) {
  const auto& g = cfg.graph();
  if (g.edge(edge).tail != cfg.start()) throw Error(ErrorCode::InvalidPath, "edge does not leave i0");
  return posterior_update(cfg, PathRecord::from_vertices(g, {cfg.start(), g.edge(edge).head}));
}

}  // namespace

DensityParams DensityParams::make(const WeightConfig& cfg) {
  require_divergence_condition(cfg);
  return {cfg, FlowChart::build(cfg.graph())};
}

double gamma_constant(const WeightConfig& cfg) {
  require_divergence_condition(cfg);
  const auto& g = cfg.graph();
  auto out = out_sums(g, cfg.edge_alpha());
  const Index i0 = cfg.start();
  double s = 0;
  for (Index i : g.v0()) {
    double a = out[i].get_d(), one = i == i0 ? 1.0 : 0.0;
    s += lgam(0.5 * (a + 1 - one)) + 0.5 * (a - one) * std::numbers::ln2;
  }
  for (Index i : g.v1()) s += lgam(std::min(out[i], out[g.star(i)]).get_d());
  for (const auto& a : cfg.class_alpha()) s -= lgam(a.get_d());
  return s;
}

Rational v1_inf_linear_form(const WeightConfig& cfg, Index i) {
  const auto& g = cfg.graph();
  auto out = out_sums(g, cfg.edge_alpha());
  const Index i0 = cfg.start();
  int touch = (i == i0 || g.star(i) == i0) ? 1 : 0;
  return (out[i] + out[g.star(i)] - touch) / 2;
}

double log_c_constant(const StarGraph& g) {
  const double n0 = static_cast<double>(g.v0().size()), n1 = static_cast<double>(g.v1().size());
  return std::numbers::ln2 - 0.5 * (n0 - 1) * std::log(2 * std::numbers::pi) - 0.5 * (n0 + n1) * std::numbers::ln2;
}

double c_constant(const StarGraph& g) { return std::exp(log_c_constant(g)); }

nlohmann::json LogDensityValue::to_json() const {
  return {{"logGamma", log_gamma}, {"logC", log_c}, {"logEta", log_eta}, {"logRho", log_rho}, {"total", total}};
}

double log_eta(const StarGraph& g, const std::vector<double>& a, const EdgeVec& y) {
  double s = 0;
  for (Index c = 0; c < g.class_count(); ++c) s += a[c] * std::log(y[g.edge_class(c).representative]);
  auto ae = class_to_edge(g, a);
  auto ai = out_sums(g, ae), yi = out_sums(g, y);
  for (Index i = 0; i < g.vertex_count(); ++i) s -= 0.5 * ai[i] * std::log(yi[i]);
  return s;
}

double log_rho(const StarGraph& g, Index i0, const EdgeVec& y) {
  auto yi = out_sums(g, y);
  double s = 0.5 * std::log(yi[i0]);
  for (Index i : g.v0()) s -= 0.5 * std::log(yi[i]);
  for (const auto& c : g.classes()) s -= std::log(y[c.representative]);
  return s + 0.5 * std::log(tree_determinant(g, y, 0));
}

LogDensityValue log_density(const WeightConfig& cfg, const EdgeVec& y) {
  const auto& g = cfg.graph();
  if (y.size() != g.edge_count()) throw Error(ErrorCode::OutOfDomain, "edge vector has the wrong size");
  if (!is_positive(y)) throw Error(ErrorCode::OutOfDomain, "y is not strictly positive");
  if (!is_star_symmetric(g, y, 1e-9)) throw Error(ErrorCode::OutOfDomain, "y is not star-symmetric");
  if (!is_divergence_free(g, y, 1e-9)) throw Error(ErrorCode::OutOfDomain, "div(y) != 0");
  if (std::abs(std::accumulate(y.begin(), y.end(), 0.0) - 1) > 1e-9)
    throw Error(ErrorCode::OutOfDomain, "y does not sum to 1 over E");
  LogDensityValue v;
  v.log_gamma = gamma_constant(cfg);
  v.log_c = log_c_constant(g);
  v.log_eta = log_eta(g, cfg.class_alpha_double(), y);
  v.log_rho = log_rho(g, cfg.start(), y);
  v.total = v.log_c + v.log_gamma + v.log_eta + v.log_rho;
  return v;
}

EdgeVec transition_kernel(const StarGraph& g, const EdgeVec& y) {
  if (!is_positive(y)) throw Error(ErrorCode::OutOfDomain, "y is not strictly positive");
  auto yi = out_sums(g, y);
  EdgeVec p(y.size());
  for (Index e = 0; e < g.edge_count(); ++e) p[e] = y[e] / yi[g.edge(e).tail];
  return p;
}

std::vector<Rational> transition_kernel(const StarGraph& g, const std::vector<Rational>& y) {
  if (!is_positive(y)) throw Error(ErrorCode::OutOfDomain, "y is not strictly positive");
  auto yi = out_sums(g, y);
  std::vector<Rational> p(y.size());
  for (Index e = 0; e < g.edge_count(); ++e) p[e] = y[e] / yi[g.edge(e).tail];
  return p;
}

Integrand density_integrand(const DensityParams& p) {
  // Parts that do not depend on y are added once, outside the integrand.
  const double log_const = gamma_constant(p.config) + log_c_constant(p.config.graph()) + p.chart.log_reference_factor();
  return [log_const, alpha = p.config.class_alpha_double(), i0 = p.config.start(), g = p.config.graph_ptr(),
          chart = p.chart](std::span<const double> c) {
    EdgeVec y = chart.to_l1_unchecked(c);
    for (double v : y)
      if (!(v > 0)) return 0.0;
    return std::exp(log_const + log_eta(*g, alpha, y) + log_rho(*g, i0, y));
  };
}

IntegralResult normalization_integral(const DensityParams& p, const NormalizationOptions& opt) {
  QuadratureOptions q = opt.quadrature;
  Rational amin = *std::min_element(p.config.class_alpha().begin(), p.config.class_alpha().end());
  if (amin < 1) {
    if (!opt.power_substitution)
      throw Error(ErrorCode::BoundarySingularity, "alpha_e < 1 needs the power substitution flag");
    q.grading = std::max(q.grading, std::ceil(2.0 / amin.get_d()));
  }
  return integrate_polytope(Polytope::from_chart(p.chart), density_integrand(p), q);
}

double gaussian_integral_closed(const StarGraph& g, const EdgeVec& w) {
  auto wi = out_sums(g, w);
  const double n0 = static_cast<double>(g.v0().size()), n1 = static_cast<double>(g.v1().size());
  double s = 0;
  for (const auto& c : g.classes()) s += 0.5 * std::log(w[c.representative]);
  for (Index i : g.v0()) s += 0.5 * std::log(wi[i]);
  for (Index i : g.v1()) s += 0.5 * std::log(wi[i]);
  s += 0.5 * (n0 + n1) * std::numbers::ln2;
  s += 0.5 * (static_cast<double>(g.class_count()) - n1 - 1) * std::log(2 * std::numbers::pi);
  s -= std::numbers::ln2 + 0.5 * std::log(tree_determinant(g, w, 0));
  return std::exp(s);
}

double gaussian_integral_gram(const StarGraph& g, const EdgeVec& w, const FlowChart& chart) {
  Eigen::MatrixXd a = q_gram(g, w, chart);
  const double d = static_cast<double>(chart.dimension());
  double logdet = 0;
  if (a.rows() > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    for (Eigen::Index i = 0; i < a.rows(); ++i) logdet += 2 * std::log(llt.matrixL()(i, i));
  }
  return std::exp(0.5 * d * std::log(4 * std::numbers::pi) - 0.5 * logdet + chart.log_reference_factor());
}

double gamma_step_residual(const WeightConfig& cfg, Index edge) {
  WeightConfig next = step_config(cfg, edge);
  double ratio = std::exp(gamma_constant(next) - gamma_constant(cfg));
  auto out = out_sums(cfg.graph(), cfg.edge_alpha());
  double expect = Rational(out[cfg.start()] / cfg.alpha(edge)).get_d();
  return std::abs(ratio / expect - 1);
}

namespace {
double zeta_ratio(const WeightConfig& from, const WeightConfig& to, const EdgeVec& y) {
  return std::exp(log_density(to, y).total - log_density(from, y).total);
}

// y-dependent part eta * rho; the constants C gamma are excluded.
double kernel_ratio(const WeightConfig& from, const WeightConfig& to, const EdgeVec& y) {
  auto a = log_density(from, y), b = log_density(to, y);
  return std::exp((b.log_eta + b.log_rho) - (a.log_eta + a.log_rho));
}
}  // namespace

double zeta_ratio_residual(const WeightConfig& cfg, const EdgeVec& y, Index edge) {
  WeightConfig next = step_config(cfg, edge);
  auto yi = out_sums(cfg.graph(), y);
  double expect = y[edge] / yi[cfg.start()];
  return std::abs(kernel_ratio(cfg, next, y) / expect - 1);
}

double feynman_kac_residual(const WeightConfig& cfg, const EdgeVec& y) {
  const auto& g = cfg.graph();
  auto out = out_sums(g, cfg.edge_alpha_double());
  const Index i0 = cfg.start();
  double s = 0;
  for (Index e : g.out_edges(i0)) s += cfg.alpha(e).get_d() / out[i0] * zeta_ratio(cfg, step_config(cfg, e), y);
  return std::abs(s - 1);
}

double feynman_kac_two_step_residual(const WeightConfig& cfg, const EdgeVec& y) {
  const auto& g = cfg.graph();
  auto out = out_sums(g, cfg.edge_alpha_double());
  double s = 0;
  for (Index e : g.out_edges(cfg.start())) {
    WeightConfig mid = step_config(cfg, e);
    auto mid_out = out_sums(g, mid.edge_alpha_double());
    double p1 = cfg.alpha(e).get_d() / out[cfg.start()];
    for (Index f : g.out_edges(mid.start())) {
      double p2 = mid.alpha(f).get_d() / mid_out[mid.start()];
      s += p1 * p2 * zeta_ratio(cfg, step_config(mid, f), y);
    }
  }
  return std::abs(s - 1);
}

namespace {

double eta_at(const StarGraph& g, const std::vector<double>& beta_class, const FlowChart& chart,
              const std::vector<double>& c) {
  return log_eta(g, beta_class, chart.to_l1(c));
}

Eigen::MatrixXd fd_hessian(const StarGraph& g, const std::vector<double>& bc, const FlowChart& chart,
                           const std::vector<double>& c0, double h) {
  const std::size_t d = c0.size();
  Eigen::MatrixXd hess(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double f0 = eta_at(g, bc, chart, c0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double v;
      if (a == b) {
        auto cp = c0, cm = c0;
        cp[a] += h;
        cm[a] -= h;
        v = (eta_at(g, bc, chart, cp) - 2 * f0 + eta_at(g, bc, chart, cm)) / (h * h);
      } else {
        auto pp = c0, pm = c0, mp = c0, mm = c0;
        pp[a] += h, pp[b] += h;
        pm[a] += h, pm[b] -= h;
        mp[a] -= h, mp[b] += h;
        mm[a] -= h, mm[b] -= h;
        v = (eta_at(g, bc, chart, pp) - eta_at(g, bc, chart, pm) - eta_at(g, bc, chart, mp) +
             eta_at(g, bc, chart, mm)) /
            (4 * h * h);
      }
      hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
      hess(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
    }
  }
  return hess;
}

}  // namespace

HessianCheck eta_hessian_check(const StarGraph& g, const EdgeVec& beta, const FlowChart& chart, Rng& rng,
                               double step, int samples) {
  HessianCheck r;
  const auto bc = edge_to_class(g, beta);
  const auto c0 = chart.from_l1(beta);
  Eigen::MatrixXd q = q_gram(g, beta, chart);
  Eigen::MatrixXd h = fd_hessian(g, bc, chart, c0, step);
  r.residual = q.size() ? (h + 0.5 * q).norm() / q.norm() : 0.0;

  // d/dc_a log eta = sum_E~ beta_c z_c / y_c - (1/2) sum_V beta_i z_i / y_i, at y = beta.
  auto bi = out_sums(g, beta);
  double g2 = 0;
  for (const auto& z : chart.directions()) {
    double grad = 0;
    for (const auto& c : g.classes()) grad += bc[&c - g.classes().data()] * z[c.representative] / beta[c.representative];
    auto zi = out_sums(g, z);
    for (Index i = 0; i < g.vertex_count(); ++i) grad -= 0.5 * bi[i] * zi[i] / bi[i];
    g2 += grad * grad;
  }
  r.gradient_norm = std::sqrt(g2);

  const double top = log_eta(g, bc, beta);
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    auto c = sample_chart_point(chart, rng);
    r.max_excess = std::max(r.max_excess, log_eta(g, bc, chart.to_l1(c)) - top);
  }
  return r;
}

double eta_hessian_residual(const StarGraph& g, const EdgeVec& beta, const FlowChart& chart, double step) {
  const auto bc = edge_to_class(g, beta);
  Eigen::MatrixXd q = q_gram(g, beta, chart);
  Eigen::MatrixXd h = fd_hessian(g, bc, chart, chart.from_l1(beta), step);
  return q.size() ? (h + 0.5 * q).norm() / q.norm() : 0.0;
}

}  // namespace srw
