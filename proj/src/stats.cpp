#include "srw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "srw/error.hpp"

namespace srw {

MeanSE mean_se(const std::vector<double>& x) {
  MeanSE r;
  if (x.empty()) return r;
  const double n = static_cast<double>(x.size());
  r.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  if (x.size() < 2) return r;
  double ss = 0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.se = std::sqrt(ss / (n - 1) / n);
  return r;
}

double chisquare_pvalue(double stat, double dof) {
  if (dof <= 0) return 1.0;
  if (stat <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2, stat / 2);
}

double ks_distance(const std::vector<double>& sorted, const std::vector<double>& cdf) {
  if (sorted.size() != cdf.size()) throw Error(ErrorCode::OutOfDomain, "ks_distance: size mismatch");
  const double n = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    d = std::max(d, std::abs(static_cast<double>(k + 1) / n - cdf[k]));
    d = std::max(d, std::abs(cdf[k] - static_cast<double>(k) / n));
  }
  return d;
}

}  // namespace srw
