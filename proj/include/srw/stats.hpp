#pragma once

#include <vector>

namespace srw {

struct MeanSE {
  double mean = 0;
  double se = 0;
};

MeanSE mean_se(const std::vector<double>& x);

// Upper tail P(X >= stat) of a chi-square variable.
double chisquare_pvalue(double stat, double dof);

// sup_x |F_emp(x) - F(x)| where cdf[k] = F(sorted[k]) at the sorted sample points.
double ks_distance(const std::vector<double>& sorted, const std::vector<double>& cdf);

}  // namespace srw
