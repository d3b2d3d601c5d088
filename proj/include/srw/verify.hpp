#pragma once

#include <functional>
#include <string>
#include <vector>

#include "srw/harness.hpp"
#include "srw/quadrature.hpp"

namespace srw {

struct VerifyOptions {
  std::uint64_t seed = 7;
  ToleranceTable tol = ToleranceTable::defaults();
  std::size_t occupation_steps = 10000;
  std::size_t occupation_replicates = 1000;
  std::size_t skeleton_samples = 100000;
  QuadratureOptions quadrature;
};

using TreeFn = std::function<double(const StarGraph&, const EdgeVec&, Index)>;

Report check_closed_form(const VerifyOptions& opt);
Report check_exchangeability(const VerifyOptions& opt);
Report check_matrix_tree(const VerifyOptions& opt, const TreeFn& tree = {});
Report check_gaussian(const VerifyOptions& opt);
Report check_feynman_kac(const VerifyOptions& opt);
Report check_normalization(const VerifyOptions& opt);
Report check_annealing(const VerifyOptions& opt);
Report check_occupation_law(const VerifyOptions& opt);
Report check_decomposition(const VerifyOptions& opt);
Report check_hessian(const VerifyOptions& opt);
Report check_bases(const VerifyOptions& opt);
Report check_invariants(const VerifyOptions& opt);

struct SuiteEntry {
  std::string group;
  std::function<Report(const VerifyOptions&)> run;
};

// Groups in suite order: the numbered acceptance checks, then module invariants.
const std::vector<SuiteEntry>& suite_entries();

// Every group on the built-in zoo; record names are prefixed with their group.
Report verify_suite(const VerifyOptions& opt);

}  // namespace srw
