#pragma once

#include <vector>

#include <json.hpp>

#include "srw/flows.hpp"
#include "srw/quadrature.hpp"
#include "srw/rng.hpp"
#include "srw/star_graph.hpp"

namespace srw {

struct DensityParams {
  WeightConfig config;
  FlowChart chart;

  // Checks the divergence condition and builds the default chart.
  static DensityParams make(const WeightConfig& cfg);
};

// log gamma(i0, alpha)
double gamma_constant(const WeightConfig& cfg);

// Linear form of inf(alpha_i, alpha_{i*}) on V1 under the divergence condition, exact.
Rational v1_inf_linear_form(const WeightConfig& cfg, Index i);

double c_constant(const StarGraph& g);
double log_c_constant(const StarGraph& g);

struct LogDensityValue {
  double log_gamma = 0;
  double log_c = 0;
  double log_eta = 0;
  double log_rho = 0;  // includes (1/2) log D(y)
  double total = 0;

  nlohmann::json to_json() const;
};

// sum_E~ a_c log y_c - (1/2) sum_V a_i log y_i, with a_i the out-sum of a.
double log_eta(const StarGraph& g, const std::vector<double>& class_exponents, const EdgeVec& y);

// (1/2) log y_{i0} - (1/2) sum_V0 log y_i - sum_E~ log y_c + (1/2) log D(y)
double log_rho(const StarGraph& g, Index i0, const EdgeVec& y);

// Density of the occupation limit against the basis-independent reference measure.
// Throws OutOfDomain unless y is positive, star-symmetric, divergence-free, sum 1.
LogDensityValue log_density(const WeightConfig& cfg, const EdgeVec& y);
inline LogDensityValue log_density(const DensityParams& p, const EdgeVec& y) { return log_density(p.config, y); }

// p_e = y_e / y_tail.
EdgeVec transition_kernel(const StarGraph& g, const EdgeVec& y);
std::vector<Rational> transition_kernel(const StarGraph& g, const std::vector<Rational>& y);

struct NormalizationOptions {
  QuadratureOptions quadrature;
  bool power_substitution = false;  // required when some alpha_c < 1
};

// zeta in chart coordinates, including the reference-measure factor; 0 outside the chart.
Integrand density_integrand(const DensityParams& p);

IntegralResult normalization_integral(const DensityParams& p, const NormalizationOptions& opt = {});

// Closed form of the Gaussian integral of exp(-Q_w/4) over L0.
double gaussian_integral_closed(const StarGraph& g, const EdgeVec& w);
// The same integral from the Gram matrix: (4 pi)^{d/2} det(A)^{-1/2} / |mu_{e0}|.
double gaussian_integral_gram(const StarGraph& g, const EdgeVec& w, const FlowChart& chart);

// |gamma(j0, alpha + inc) / gamma(i0, alpha) - alpha_{i0} / alpha_{i0 j0}|, relative.
double gamma_step_residual(const WeightConfig& cfg, Index edge);
// Ratio identity for the y-dependent factor eta * rho of zeta (the constant gamma moves by
// the step identity above): |ratio / (y_{i0 j0} / y_{i0}) - 1|.
double zeta_ratio_residual(const WeightConfig& cfg, const EdgeVec& y, Index edge);
double feynman_kac_residual(const WeightConfig& cfg, const EdgeVec& y);
double feynman_kac_two_step_residual(const WeightConfig& cfg, const EdgeVec& y);

struct HessianCheck {
  double residual = 0;       // ||H + Q_beta/2|| / ||Q_beta||, Frobenius norms
  double gradient_norm = 0;  // analytic gradient at beta
  double max_excess = 0;     // max over samples of log eta(y) - log eta(beta)
};

HessianCheck eta_hessian_check(const StarGraph& g, const EdgeVec& beta, const FlowChart& chart, Rng& rng,
                               double step = 1e-4, int samples = 100);
double eta_hessian_residual(const StarGraph& g, const EdgeVec& beta, const FlowChart& chart, double step = 1e-4);

}  // namespace srw
