#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/boost.hpp"
#include "selectboost/grouping.hpp"
#include "selectboost/lasso.hpp"
#include "selectboost/selectors.hpp"

namespace selectboost {

struct SimulationConfig {
  int N = 100;
  int P = 1000;
  int q = 50;
  int n_clusters = 5;
  double within_cluster_noise = 0.3;
  double response_noise = 1.0;
  int repetitions = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

struct GroundTruthDataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y_continuous;
  Eigen::VectorXd y_binary;  // -1/+1
  std::vector<int> support;  // 0-based, sorted
  Eigen::VectorXd beta_true;
};

/// Latent-factor cluster simulation. The first q variables are split into
/// n_clusters contiguous blocks; variable j of block l is u_l + noise. The
/// remaining P - q variables are independent standard normals. The response
/// is sum_l u_l + response_noise * eps and its sign gives the binary label.
GroundTruthDataset generate_cluster_data(const SimulationConfig& config, int repetition);

struct Metrics {
  double recall = 0.0;
  double precision = 0.0;
  double fscore = 0.0;
  double selection = 0.0;
};

/// Precision of an empty selection is 0.
Metrics metrics(const SelectionMask& mask, const std::vector<int>& support);

struct IrrepresentableResult {
  bool holds = false;
  Eigen::VectorXd values;        // one per non-support variable
  std::vector<int> non_support;  // indices matching `values`
  double max_value = 0.0;
};

/// |X_{not S}' X_S (X_S' X_S)^{-1} sign(beta_S)|, componentwise; holds when
/// every value is < 1. Throws SingularGram when the support Gram matrix has
/// condition number above 1e12.
IrrepresentableResult irrepresentable_check(const Eigen::MatrixXd& x,
                                            const std::vector<int>& support,
                                            const std::vector<int>& beta_signs);

enum class StudyMethod { Lasso, SelectBoost, NaiveSelectBoost, Stability };

std::string_view to_string(StudyMethod method);
StudyMethod parse_study_method(std::string_view name);
bool depends_on_c0(StudyMethod method);

struct StudyConfig {
  SimulationConfig simulation;
  std::vector<StudyMethod> methods = {StudyMethod::Lasso, StudyMethod::SelectBoost,
                                      StudyMethod::NaiveSelectBoost, StudyMethod::Stability};
  std::vector<double> c0_grid = {1.0, 0.9, 0.8, 0.7};
  int B = 100;
  double threshold = 1.0;
  Family family = Family::Logistic;
  GroupingStrategy strategy = GroupingStrategy::Correlation;
  CvConfig cv;
  int stability_B = 100;
  double stability_threshold = 0.9;
  bool parallel = true;
};

struct MetricsRow {
  int repetition = 0;
  StudyMethod method = StudyMethod::Lasso;
  std::optional<double> c0;
  Metrics metrics;
  std::string error;  // non-empty when the method failed on this repetition
};

struct MetricsSummary {
  StudyMethod method = StudyMethod::Lasso;
  std::optional<double> c0;
  int count = 0;
  int failures = 0;
  Metrics mean;
  Metrics standard_error;
};

struct StudyReport {
  std::vector<MetricsRow> rows;
  std::vector<MetricsSummary> summary;
};

/// Rows are ordered by repetition, then method (config order), then c0.
/// Methods that ignore c0 contribute one row per repetition.
StudyReport run_study(const StudyConfig& config);

std::vector<MetricsSummary> summarize(const std::vector<MetricsRow>& rows);

}  // namespace selectboost
