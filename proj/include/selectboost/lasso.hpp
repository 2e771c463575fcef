#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/sphere.hpp"

namespace selectboost {

enum class Family { Linear, Logistic };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

// Penalized fit at one lambda. Losses, with an unpenalized intercept b0:
//   linear:   (1/2N) ||y - b0 - X beta||^2             + lambda ||beta||_1
//   logistic: (1/N) sum log(1 + exp(-y_i (b0 + x_i beta))) + lambda ||beta||_1
// Logistic labels are -1/+1.
struct LassoFit {
  double lambda = 0.0;
  Eigen::VectorXd beta;
  double intercept = 0.0;
  double objective_value = 0.0;
  Family family = Family::Linear;
  long cycles = 0;                      // coordinate-descent passes used
  std::vector<double> objective_trace;  // penalized objective after each reweighting step
};

struct LassoOptions {
  double tolerance = 1e-7;  // max coefficient change at convergence
  long max_cycles = 100000;
};

double soft_threshold(double z, double t);

/// Smallest lambda for which the all-zero coefficient vector is optimal.
double lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family);

double penalized_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& beta, double intercept, double lambda,
                           Family family);
/// Unpenalized part of the objective (mean squared error / 2, or mean
/// negative log-likelihood).
double data_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta,
                 double intercept, Family family);

/// Throws BadLabels unless every entry is -1 or +1.
void check_signed_labels(const Eigen::VectorXd& y);
/// Maps {0, 1} labels to {-1, +1}; -1/+1 input passes through.
Eigen::VectorXd to_signed_labels(const Eigen::VectorXd& y);

/// Cyclic coordinate descent with active-set cycling. The logistic family
/// runs iteratively reweighted least squares with step halving, so the
/// penalized objective never increases between reweighting steps.
LassoFit lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                   Family family, const LassoFit* warm_start = nullptr,
                   const LassoOptions& options = {});
LassoFit lasso_fit(const StandardizedDesign& x, const Eigen::VectorXd& y, double lambda,
                   Family family, const LassoOptions& options = {});

/// Warm-started fits along a decreasing lambda sequence. Stops after the
/// first fit whose fraction of explained loss reaches `saturation` (the rest
/// of the path would only interpolate noise); the result may be shorter than
/// `lambdas`.
std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 const std::vector<double>& lambdas, Family family,
                                 double saturation = 0.999, const LassoOptions& options = {});

std::vector<double> lambda_grid(double lambda_max, int grid_size, double ratio);

}  // namespace selectboost
