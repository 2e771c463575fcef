#include "selectboost/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "selectboost/error.hpp"

namespace selectboost {

namespace {

constexpr double kMinWeight = 1e-5;
constexpr double kMinProbability = 1e-5;
constexpr int kMaxHalvings = 30;

double log1p_exp(double a) { return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a)); }

double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

Eigen::VectorXd linear_predictor(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta,
                                 double intercept) {
  Eigen::VectorXd eta = Eigen::VectorXd::Constant(x.rows(), intercept);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (beta(j) != 0.0) eta.noalias() += beta(j) * x.col(j);
  }
  return eta;
}

// Minimizes (1/2N) sum_i w_i (z_i - b0 - x_i beta)^2 + lambda ||beta||_1 in place,
// starting from (beta, b0). Returns the number of passes used.
long weighted_coordinate_descent(const Eigen::MatrixXd& x, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& w, double lambda, Eigen::VectorXd& beta,
                                 double& b0, double tolerance, long max_cycles) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double weight_sum = w.sum();

  Eigen::VectorXd residual = z - linear_predictor(x, beta, b0);
  Eigen::VectorXd curvature(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    curvature(j) = w.cwiseProduct(x.col(j)).dot(x.col(j)) * inv_n;
  }

  auto update = [&](Eigen::Index j) {
    if (curvature(j) <= 0.0) return 0.0;
    const double* col = x.col(j).data();
    double gradient = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) gradient += w(i) * col[i] * residual(i);
    const double old = beta(j);
    const double fresh = soft_threshold(gradient * inv_n + curvature(j) * old, lambda) / curvature(j);
    if (fresh == old) return 0.0;
    const double change = fresh - old;
    for (Eigen::Index i = 0; i < n; ++i) residual(i) -= change * col[i];
    beta(j) = fresh;
    return std::abs(change);
  };
  auto update_intercept = [&]() {
    const double shift = w.dot(residual) / weight_sum;
    b0 += shift;
    residual.array() -= shift;
    return std::abs(shift);
  };

  // Moves (b0, beta_A) toward the minimizer of the objective with the signs of
  // the active set held fixed, stopping where the first coefficient reaches zero.
  // Along that segment the objective equals a convex quadratic, so the step never
  // increases it; coordinate descent then confirms convergence as usual.
  auto polish = [&](const std::vector<Eigen::Index>& set) {
    const auto m = static_cast<Eigen::Index>(set.size());
    Eigen::MatrixXd z_a(n, m + 1);
    z_a.col(0).setOnes();
    for (Eigen::Index k = 0; k < m; ++k) z_a.col(k + 1) = x.col(set[static_cast<std::size_t>(k)]);
    const Eigen::MatrixXd weighted = w.asDiagonal() * z_a;
    const Eigen::MatrixXd gram = z_a.transpose() * weighted;
    Eigen::VectorXd rhs = weighted.transpose() * z;
    Eigen::VectorXd theta(m + 1);
    theta(0) = b0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double b = beta(set[static_cast<std::size_t>(k)]);
      theta(k + 1) = b;
      rhs(k + 1) -= static_cast<double>(n) * lambda * (b > 0.0 ? 1.0 : -1.0);
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) return;
    const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
    if (!(pivots.minCoeff() > 1e-10 * pivots.maxCoeff())) return;
    const Eigen::VectorXd direction = ldlt.solve(rhs) - theta;
    if (!direction.allFinite()) return;

    double step = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index k = 1; k <= m; ++k) {
      if (theta(k) * (theta(k) + direction(k)) < 0.0) {
        const double reach = -theta(k) / direction(k);
        if (reach < step) {
          step = reach;
          blocking = k;
        }
      }
    }
    theta += step * direction;
    if (blocking >= 0) theta(blocking) = 0.0;
    b0 = theta(0);
    for (Eigen::Index k = 0; k < m; ++k) beta(set[static_cast<std::size_t>(k)]) = theta(k + 1);
    residual = z - z_a * theta;
  };

  long cycles = 0;
  std::vector<Eigen::Index> active;
  for (;;) {
    if (++cycles > max_cycles) {
      throw Error(ErrorCode::NonConvergence, "lasso coordinate descent did not converge");
    }
    double largest = update_intercept();
    for (Eigen::Index j = 0; j < p; ++j) largest = std::max(largest, update(j));
    if (largest < tolerance) break;

    active.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (beta(j) != 0.0) active.push_back(j);
    }
    for (int pass = 1;; ++pass) {
      if (++cycles > max_cycles) {
        throw Error(ErrorCode::NonConvergence, "lasso coordinate descent did not converge");
      }
      double inner = update_intercept();
      for (Eigen::Index j : active) inner = std::max(inner, update(j));
      if (inner < tolerance) break;
      if (pass % 4 == 0) {
        std::erase_if(active, [&](Eigen::Index j) { return beta(j) == 0.0; });
        if (!active.empty() && static_cast<Eigen::Index>(active.size()) < n) polish(active);
      }
    }
  }
  return cycles;
}

double null_loss(const Eigen::VectorXd& y, Family family) {
  if (family == Family::Linear) {
    return 0.5 * (y.array() - y.mean()).square().mean();
  }
  const double share = ((y.array() + 1.0) * 0.5).mean();
  if (share <= 0.0 || share >= 1.0) return 0.0;
  return -(share * std::log(share) + (1.0 - share) * std::log(1.0 - share));
}

// Intercept-only solution: exact for one-class labels and for lambda >= lambda_max.
LassoFit null_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda, Family family) {
  LassoFit fit;
  fit.lambda = lambda;
  fit.family = family;
  fit.beta = Eigen::VectorXd::Zero(x.cols());
  if (family == Family::Linear) {
    fit.intercept = y.mean();
  } else {
    const double share =
        std::clamp(((y.array() + 1.0) * 0.5).mean(), kMinProbability, 1.0 - kMinProbability);
    fit.intercept = std::log(share / (1.0 - share));
  }
  fit.objective_value = penalized_objective(x, y, fit.beta, fit.intercept, lambda, family);
  fit.objective_trace.push_back(fit.objective_value);
  return fit;
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::Linear ? "linear" : "logistic";
}

Family parse_family(std::string_view name) {
  if (name == "linear") return Family::Linear;
  if (name == "logistic") return Family::Logistic;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

double lambda_max(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family) {
  Eigen::VectorXd centered;
  if (family == Family::Linear) {
    centered = y.array() - y.mean();
  } else {
    check_signed_labels(y);
    const Eigen::VectorXd t = (y.array() + 1.0) * 0.5;
    centered = t.array() - t.mean();
  }
  return (x.transpose() * centered).cwiseAbs().maxCoeff() / static_cast<double>(x.rows());
}

double data_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta,
                 double intercept, Family family) {
  const Eigen::VectorXd eta = linear_predictor(x, beta, intercept);
  const double n = static_cast<double>(x.rows());
  if (family == Family::Linear) return 0.5 * (y - eta).squaredNorm() / n;
  double total = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) total += log1p_exp(-y(i) * eta(i));
  return total / n;
}

double penalized_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& beta, double intercept, double lambda,
                           Family family) {
  return data_loss(x, y, beta, intercept, family) + lambda * beta.lpNorm<1>();
}

void check_signed_labels(const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 1.0 && y(i) != -1.0) {
      throw Error(ErrorCode::BadLabels,
                  "logistic labels must be -1 or +1 (row " + std::to_string(i) + ")",
                  static_cast<std::size_t>(i));
    }
  }
}

Eigen::VectorXd to_signed_labels(const Eigen::VectorXd& y) {
  const bool zero_one = (y.array() == 0.0 || y.array() == 1.0).all();
  if (zero_one && (y.array() == 0.0).any()) return (2.0 * y.array() - 1.0).matrix();
  check_signed_labels(y);
  return y;
}

namespace {

LassoFit fit_unscreened(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                        Family family, const LassoFit* warm_start, const LassoOptions& options) {
  LassoFit fit;
  fit.lambda = lambda;
  fit.family = family;
  const bool warm = warm_start != nullptr && warm_start->beta.size() == x.cols();
  fit.beta = warm ? warm_start->beta : Eigen::VectorXd::Zero(x.cols());

  if (family == Family::Linear) {
    fit.intercept = warm ? warm_start->intercept : y.mean();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(x.rows());
    fit.cycles = weighted_coordinate_descent(x, y, ones, lambda, fit.beta, fit.intercept,
                                             options.tolerance, options.max_cycles);
    fit.objective_value = penalized_objective(x, y, fit.beta, fit.intercept, lambda, family);
    fit.objective_trace.push_back(fit.objective_value);
    return fit;
  }

  check_signed_labels(y);
  if ((y.array() == y(0)).all()) return null_fit(x, y, lambda, Family::Logistic);

  const Eigen::VectorXd target = (y.array() + 1.0) * 0.5;
  if (warm) {
    fit.intercept = warm_start->intercept;
  } else {
    const double share = target.mean();
    fit.intercept = std::log(share / (1.0 - share));
  }
  double objective = penalized_objective(x, y, fit.beta, fit.intercept, lambda, family);
  fit.objective_trace.push_back(objective);

  Eigen::VectorXd weights(x.rows());
  Eigen::VectorXd working(x.rows());
  for (;;) {
    const Eigen::VectorXd eta = linear_predictor(x, fit.beta, fit.intercept);
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      const double prob = sigmoid(eta(i));
      weights(i) = std::max(prob * (1.0 - prob), kMinWeight);
      working(i) = eta(i) + (target(i) - prob) / weights(i);
    }
    Eigen::VectorXd proposal = fit.beta;
    double proposal_intercept = fit.intercept;
    fit.cycles += weighted_coordinate_descent(x, working, weights, lambda, proposal,
                                              proposal_intercept, options.tolerance,
                                              options.max_cycles - fit.cycles);

    // Step halving keeps the penalized objective monotone.
    const Eigen::VectorXd direction = proposal - fit.beta;
    const double intercept_direction = proposal_intercept - fit.intercept;
    double step = 1.0;
    double candidate = penalized_objective(x, y, proposal, proposal_intercept, lambda, family);
    for (int halving = 0; candidate > objective && halving < kMaxHalvings; ++halving) {
      step *= 0.5;
      proposal = fit.beta + step * direction;
      proposal_intercept = fit.intercept + step * intercept_direction;
      candidate = penalized_objective(x, y, proposal, proposal_intercept, lambda, family);
    }
    if (candidate > objective) break;  // no descent direction left

    const double change = std::max((proposal - fit.beta).cwiseAbs().maxCoeff(),
                                   std::abs(proposal_intercept - fit.intercept));
    fit.beta = proposal;
    fit.intercept = proposal_intercept;
    objective = candidate;
    fit.objective_trace.push_back(objective);
    if (change < options.tolerance) break;
  }
  fit.objective_value = objective;
  return fit;
}

// x_j'(residual)/N for every column: the negative loss gradient.
Eigen::VectorXd loss_score(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& beta, double intercept, Family family) {
  const Eigen::VectorXd eta = linear_predictor(x, beta, intercept);
  Eigen::VectorXd residual(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    residual(i) = family == Family::Linear ? y(i) - eta(i) : 0.5 * (y(i) + 1.0) - sigmoid(eta(i));
  }
  return x.transpose() * residual / static_cast<double>(x.rows());
}

}  // namespace

LassoFit lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                   Family family, const LassoFit* warm_start, const LassoOptions& options) {
  if (y.size() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "lasso_fit: response length differs from row count");
  }
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lasso_fit: lambda must be > 0");
  const bool warm = warm_start != nullptr && warm_start->beta.size() == x.cols() &&
                    warm_start->lambda > lambda;
  if (family == Family::Logistic) {
    check_signed_labels(y);
    if ((y.array() == y(0)).all()) return null_fit(x, y, lambda, Family::Logistic);
  }
  if (lambda >= lambda_max(x, y, family)) return null_fit(x, y, lambda, family);
  if (!warm) return fit_unscreened(x, y, lambda, family, warm_start, options);

  // Sequential strong rule: drop columns whose score at the previous solution is
  // below 2*lambda - lambda_prev, solve on the rest, then re-admit any dropped
  // column that violates |score| <= lambda at the new solution.
  const Eigen::Index p = x.cols();
  Eigen::VectorXd score = loss_score(x, y, warm_start->beta, warm_start->intercept, family);
  const double cutoff = 2.0 * lambda - warm_start->lambda;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (warm_start->beta(j) != 0.0 || std::abs(score(j)) >= cutoff) kept.push_back(j);
  }

  Eigen::VectorXd beta = warm_start->beta;
  double intercept = warm_start->intercept;
  long cycles = 0;
  std::vector<double> trace;
  for (;;) {
    if (static_cast<Eigen::Index>(kept.size()) == p) {
      LassoFit start;
      start.lambda = warm_start->lambda;
      start.beta = beta;
      start.intercept = intercept;
      LassoFit fit = fit_unscreened(x, y, lambda, family, &start, options);
      fit.cycles += cycles;
      return fit;
    }
    const auto m = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd sub(x.rows(), m);
    LassoFit start;
    start.lambda = warm_start->lambda;
    start.beta.resize(m);
    start.intercept = intercept;
    for (Eigen::Index k = 0; k < m; ++k) {
      sub.col(k) = x.col(kept[static_cast<std::size_t>(k)]);
      start.beta(k) = beta(kept[static_cast<std::size_t>(k)]);
    }
    const LassoFit part = fit_unscreened(sub, y, lambda, family, &start, options);
    cycles += part.cycles;
    trace.insert(trace.end(), part.objective_trace.begin(), part.objective_trace.end());
    beta.setZero();
    for (Eigen::Index k = 0; k < m; ++k) beta(kept[static_cast<std::size_t>(k)]) = part.beta(k);
    intercept = part.intercept;

    score = loss_score(x, y, beta, intercept, family);
    std::vector<Eigen::Index> grown;
    std::size_t cursor = 0;
    bool violated = false;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (cursor < kept.size() && kept[cursor] == j) {
        grown.push_back(j);
        ++cursor;
      } else if (std::abs(score(j)) > lambda) {
        grown.push_back(j);
        violated = true;
      }
    }
    if (!violated) {
      LassoFit fit;
      fit.lambda = lambda;
      fit.family = family;
      fit.beta = std::move(beta);
      fit.intercept = intercept;
      fit.cycles = cycles;
      fit.objective_value = penalized_objective(x, y, fit.beta, fit.intercept, lambda, family);
      fit.objective_trace = std::move(trace);
      return fit;
    }
    kept = std::move(grown);
  }
}

LassoFit lasso_fit(const StandardizedDesign& x, const Eigen::VectorXd& y, double lambda,
                   Family family, const LassoOptions& options) {
  return lasso_fit(x.values, y, lambda, family, nullptr, options);
}

std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                 const std::vector<double>& lambdas, Family family,
                                 double saturation, const LassoOptions& options) {
  std::vector<LassoFit> path;
  path.reserve(lambdas.size());
  const double baseline = null_loss(y, family);
  for (double lambda : lambdas) {
    path.push_back(lasso_fit(x, y, lambda, family, path.empty() ? nullptr : &path.back(), options));
    if (baseline > 0.0) {
      const LassoFit& last = path.back();
      const double explained =
          1.0 - data_loss(x, y, last.beta, last.intercept, family) / baseline;
      if (explained >= saturation) break;
    }
  }
  return path;
}

std::vector<double> lambda_grid(double lambda_max, int grid_size, double ratio) {
  if (grid_size < 1) throw Error(ErrorCode::InvalidArgument, "lambda grid needs at least one point");
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda_max must be positive");
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  const double log_ratio = std::log(ratio);
  for (int k = 0; k < grid_size; ++k) {
    grid[static_cast<std::size_t>(k)] =
        grid_size == 1 ? lambda_max
                       : lambda_max * std::exp(log_ratio * k / static_cast<double>(grid_size - 1));
  }
  grid.front() = lambda_max;
  return grid;
}

}  // namespace selectboost
