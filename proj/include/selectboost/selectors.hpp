#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/grouping.hpp"
#include "selectboost/lasso.hpp"

namespace selectboost {

struct SelectionMask {
  std::vector<std::uint8_t> bits;
  std::optional<Eigen::VectorXd> coefficients;

  std::size_t size() const { return bits.size(); }
  std::size_t count() const;
  std::vector<int> indices() const;

  static SelectionMask empty(std::size_t p);
  static SelectionMask from_coefficients(const Eigen::VectorXd& beta);
  static SelectionMask from_indices(std::size_t p, const std::vector<int>& indices);
};

bool operator==(const SelectionMask& a, const SelectionMask& b);  // compares bits only

// Any variable-selection method: (design, response) -> 0/1 mask. Methods must be
// deterministic functions of their inputs; boost and the baselines rely on it.
using SelectionMethod =
    std::function<SelectionMask(const Eigen::MatrixXd& design, const Eigen::VectorXd& response)>;

enum class LambdaRule { Min, OneSe };

LambdaRule parse_lambda_rule(std::string_view name);
std::string_view to_string(LambdaRule rule);

struct CvConfig {
  int folds = 10;
  int grid_size = 100;
  double ratio = 1e-3;
  std::uint64_t seed = 1;
  LambdaRule rule = LambdaRule::Min;
};

struct CvResult {
  std::vector<double> lambda_grid;
  std::vector<double> mean_cv_loss;
  std::vector<double> se_cv_loss;
  double lambda_min = 0.0;
  double lambda_1se = 0.0;
  int k = 0;
  std::uint64_t fold_seed = 0;
  std::vector<int> fold_of;             // fold index per observation
  std::vector<LassoFit> full_path;      // fits on all data along lambda_grid

  std::size_t index_min() const;
  std::size_t index_1se() const;
};

/// Stratified (logistic) or plain seeded fold assignment, fold = position % k
/// after a shuffle.
std::vector<int> assign_folds(const Eigen::VectorXd& y, Family family, int k, std::uint64_t seed);

/// k-fold cross-validation over a geometric grid from lambda_max down to
/// ratio * lambda_max. The grid is cut to the shortest path any fold (or the
/// full data) produced before saturating. Losses are mean squared error /
/// mean negative log-likelihood on held-out rows.
CvResult cv_lambda(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family,
                   const CvConfig& config);

/// Cross-validated Lasso; the mask holds the nonzero coefficients of the
/// full-data fit at the chosen lambda.
SelectionMask lasso_select(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family,
                           const CvConfig& config);

SelectionMethod make_lasso_selector(Family family, CvConfig config);

struct StabilityResult {
  SelectionMask mask;
  std::vector<double> frequency;
};

/// B subsamples of floor(N/2) rows without replacement; mask = frequency >= pi_thr.
/// Replicates run on OpenMP threads, each with its own stream from (seed, b).
StabilityResult stability_selection(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                    const SelectionMethod& base, int replicates,
                                    double pi_threshold, std::uint64_t seed);
StabilityResult stability_selection_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                           const SelectionMethod& base, int replicates,
                                           double pi_threshold, std::uint64_t seed);

std::vector<int> stability_subsample(Eigen::Index n, std::uint64_t seed, int replicate);

/// Base selection with every variable whose group is not a singleton dropped.
SelectionMask naive_selectboost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                const SelectionMethod& base, const GroupMap& groups);

}  // namespace selectboost
