#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srw/quadrature.hpp"
#include "srw/star_graph.hpp"

namespace srw {

// Every pass/fail threshold used by the checks, keyed by name.
class ToleranceTable {
 public:
  static ToleranceTable defaults();

  double get(const std::string& key) const;  // throws ParseError for unknown keys
  void set(const std::string& key, double value);
  void apply_override(const std::string& assignment);  // "key=value"
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

enum class Status { Pass, Fail, Skip };
std::string_view to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::Skip;
  double statistic = 0;
  double threshold = 0;
  std::uint64_t seed = 0;
  double runtime = 0;  // seconds; excluded from reproducibility comparisons
  std::string note;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  // Adds a record: pass iff statistic <= threshold (or >= threshold when `at_least`).
  CheckRecord& add(std::string name, double statistic, double threshold, bool at_least = false);
  CheckRecord& skip(std::string name, std::string note, double statistic = 0);
  void append(const Report& other);

  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }

  nlohmann::json to_json(bool include_runtime = true) const;
};

inline constexpr const char* kReportSchema = "srw-report/1";

struct OccupationEstimate {
  std::size_t steps = 0;
  std::size_t replicates = 0;
  std::vector<double> class_mean;  // per-edge value y_c = N_c / (|c| n)
  std::vector<double> class_se;
  std::vector<double> vertex_mean;  // Y_i, out-sums
  double max_divergence_residual = 0;
  double max_symmetry_gap = 0;  // max |N_e - N_{e*}| / n
  std::vector<std::vector<double>> samples;  // [replicate][class]

  nlohmann::json to_json(const StarGraph& g) const;
};

OccupationEstimate estimate_occupation(const WeightConfig& cfg, std::size_t steps, std::size_t replicates,
                                       std::uint64_t seed, Execution exec = Execution::Parallel);

struct CompareOptions {
  QuadratureOptions quadrature;
  std::optional<WeightConfig> analytic;  // density to compare against; defaults to cfg
};

// MC sample of every chart coordinate of Y against the quadrature marginals of the density.
Report compare_empirical_analytic(const WeightConfig& cfg, std::size_t steps, std::size_t replicates,
                                  std::uint64_t seed, const ToleranceTable& tol, const CompareOptions& opt = {});

// Chi-square of annealed skeletons of length k against the exact path law of `oracle`
// (defaults to cfg). Throws TooManyBins above 1000 paths.
Report skeleton_chisquare(const WeightConfig& cfg, std::size_t k, std::size_t samples, std::uint64_t seed,
                          const ToleranceTable& tol, const std::optional<WeightConfig>& oracle = {},
                          bool expect_reject = false);

struct SkeletonTest {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
  std::size_t bins = 0;
};
SkeletonTest skeleton_chisquare_test(const WeightConfig& cfg, std::size_t k, std::size_t samples,
                                     std::uint64_t seed, const std::optional<WeightConfig>& oracle = {});

}  // namespace srw
