#include "selectboost/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "selectboost/error.hpp"
#include "selectboost/parallel.hpp"
#include "selectboost/random.hpp"

namespace selectboost {

namespace {

constexpr std::uint64_t kFoldStream = 0xF01D;
constexpr double kNullSignal = 1e-14;

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

Eigen::VectorXd take_rows(const Eigen::VectorXd& y, const std::vector<int>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = y(rows[i]);
  return out;
}

StabilityResult stability_impl(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                               const SelectionMethod& base, int replicates, double pi_threshold,
                               std::uint64_t seed, bool parallel) {
  if (replicates < 2) throw Error(ErrorCode::InvalidArgument, "stability selection needs B >= 2");
  if (!(pi_threshold > 0.5 && pi_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "stability threshold must lie in (0.5, 1]");
  }
  const auto p = static_cast<std::size_t>(x.cols());
  std::vector<SelectionMask> masks(static_cast<std::size_t>(replicates));
  detail::for_each_index(replicates, parallel, [&](int b) {
    const std::vector<int> rows = stability_subsample(x.rows(), seed, b);
    masks[static_cast<std::size_t>(b)] = base(take_rows(x, rows), take_rows(y, rows));
  });

  std::vector<int> counts(p, 0);
  for (const auto& mask : masks) {
    for (std::size_t j = 0; j < p; ++j) counts[j] += mask.bits[j];
  }
  StabilityResult result;
  result.frequency.resize(p);
  result.mask = SelectionMask::empty(p);
  for (std::size_t j = 0; j < p; ++j) {
    result.frequency[j] = static_cast<double>(counts[j]) / replicates;
    result.mask.bits[j] = result.frequency[j] >= pi_threshold ? 1 : 0;
  }
  return result;
}

}  // namespace

std::size_t SelectionMask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<int> SelectionMask::indices() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

SelectionMask SelectionMask::empty(std::size_t p) {
  SelectionMask mask;
  mask.bits.assign(p, 0);
  return mask;
}

SelectionMask SelectionMask::from_coefficients(const Eigen::VectorXd& beta) {
  SelectionMask mask = empty(static_cast<std::size_t>(beta.size()));
  for (Eigen::Index j = 0; j < beta.size(); ++j) mask.bits[static_cast<std::size_t>(j)] = beta(j) != 0.0;
  mask.coefficients = beta;
  return mask;
}

SelectionMask SelectionMask::from_indices(std::size_t p, const std::vector<int>& indices) {
  SelectionMask mask = empty(p);
  for (int j : indices) mask.bits.at(static_cast<std::size_t>(j)) = 1;
  return mask;
}

bool operator==(const SelectionMask& a, const SelectionMask& b) { return a.bits == b.bits; }

LambdaRule parse_lambda_rule(std::string_view name) {
  if (name == "min") return LambdaRule::Min;
  if (name == "1se") return LambdaRule::OneSe;
  throw Error(ErrorCode::InvalidArgument, "unknown lambda rule '" + std::string(name) + "'");
}

std::string_view to_string(LambdaRule rule) { return rule == LambdaRule::Min ? "min" : "1se"; }

std::size_t CvResult::index_min() const {
  return static_cast<std::size_t>(
      std::find(lambda_grid.begin(), lambda_grid.end(), lambda_min) - lambda_grid.begin());
}

std::size_t CvResult::index_1se() const {
  return static_cast<std::size_t>(
      std::find(lambda_grid.begin(), lambda_grid.end(), lambda_1se) - lambda_grid.begin());
}

std::vector<int> assign_folds(const Eigen::VectorXd& y, Family family, int k, std::uint64_t seed) {
  RandomStream rng(seed, {kFoldStream});
  std::vector<int> order;
  if (family == Family::Logistic) {
    std::vector<int> positive;
    std::vector<int> negative;
    for (Eigen::Index i = 0; i < y.size(); ++i) (y(i) > 0 ? positive : negative).push_back(static_cast<int>(i));
    std::shuffle(positive.begin(), positive.end(), rng.engine());
    std::shuffle(negative.begin(), negative.end(), rng.engine());
    order = std::move(positive);
    order.insert(order.end(), negative.begin(), negative.end());
  } else {
    order.resize(static_cast<std::size_t>(y.size()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
  }
  std::vector<int> fold_of(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fold_of[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(k));
  }
  return fold_of;
}

CvResult cv_lambda(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family,
                   const CvConfig& config) {
  const Eigen::Index n = x.rows();
  if (y.size() != n) throw Error(ErrorCode::DimensionMismatch, "cv_lambda: response length differs");
  if (config.folds < 2) throw Error(ErrorCode::InvalidArgument, "cv_lambda: need at least 2 folds");
  if (n < config.folds) {
    throw Error(ErrorCode::TooFewObservations,
                "cv_lambda: " + std::to_string(n) + " observations for " +
                    std::to_string(config.folds) + " folds");
  }
  if (family == Family::Logistic) check_signed_labels(y);
  const double top = lambda_max(x, y, family);
  if (!(top > kNullSignal)) {
    throw Error(ErrorCode::InvalidArgument, "cv_lambda: response has no association with the design");
  }

  CvResult result;
  result.k = config.folds;
  result.fold_seed = config.seed;
  result.fold_of = assign_folds(y, family, config.folds, config.seed);
  std::vector<double> grid = lambda_grid(top, config.grid_size, config.ratio);
  result.full_path = lasso_path(x, y, grid, family);

  std::size_t usable = result.full_path.size();
  std::vector<std::vector<double>> fold_loss(static_cast<std::size_t>(config.folds));
  std::vector<double> fold_size(static_cast<std::size_t>(config.folds), 0.0);
  for (int f = 0; f < config.folds; ++f) {
    std::vector<int> train;
    std::vector<int> test;
    for (Eigen::Index i = 0; i < n; ++i) {
      (result.fold_of[static_cast<std::size_t>(i)] == f ? test : train).push_back(static_cast<int>(i));
    }
    const Eigen::MatrixXd x_train = take_rows(x, train);
    const Eigen::VectorXd y_train = take_rows(y, train);
    const Eigen::MatrixXd x_test = take_rows(x, test);
    const Eigen::VectorXd y_test = take_rows(y, test);
    const std::vector<double> head(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(usable));
    const auto path = lasso_path(x_train, y_train, head, family);
    usable = std::min(usable, path.size());
    auto& losses = fold_loss[static_cast<std::size_t>(f)];
    for (const auto& fit : path) {
      losses.push_back(data_loss(x_test, y_test, fit.beta, fit.intercept, family) *
                       (family == Family::Linear ? 2.0 : 1.0));
    }
    fold_size[static_cast<std::size_t>(f)] = static_cast<double>(test.size());
  }

  grid.resize(usable);
  result.full_path.resize(usable);
  result.lambda_grid = grid;
  result.mean_cv_loss.assign(usable, 0.0);
  result.se_cv_loss.assign(usable, 0.0);
  const double total = static_cast<double>(n);
  for (std::size_t l = 0; l < usable; ++l) {
    double mean = 0.0;
    for (int f = 0; f < config.folds; ++f) {
      mean += fold_size[static_cast<std::size_t>(f)] * fold_loss[static_cast<std::size_t>(f)][l];
    }
    mean /= total;
    double spread = 0.0;
    for (int f = 0; f < config.folds; ++f) {
      const double dev = fold_loss[static_cast<std::size_t>(f)][l] - mean;
      spread += fold_size[static_cast<std::size_t>(f)] * dev * dev;
    }
    result.mean_cv_loss[l] = mean;
    result.se_cv_loss[l] = std::sqrt(spread / total / (config.folds - 1));
  }

  std::size_t best = 0;
  for (std::size_t l = 1; l < usable; ++l) {
    if (result.mean_cv_loss[l] < result.mean_cv_loss[best]) best = l;
  }
  result.lambda_min = grid[best];
  const double bound = result.mean_cv_loss[best] + result.se_cv_loss[best];
  std::size_t one_se = best;
  for (std::size_t l = 0; l <= best; ++l) {
    if (result.mean_cv_loss[l] <= bound) {
      one_se = l;
      break;
    }
  }
  result.lambda_1se = grid[one_se];
  return result;
}

SelectionMask lasso_select(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, Family family,
                           const CvConfig& config) {
  if (y.size() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "lasso_select: response length differs");
  if (family == Family::Logistic) check_signed_labels(y);
  if (!(lambda_max(x, y, family) > kNullSignal)) {
    return SelectionMask::from_coefficients(Eigen::VectorXd::Zero(x.cols()));
  }
  const CvResult cv = cv_lambda(x, y, family, config);
  const std::size_t index = config.rule == LambdaRule::Min ? cv.index_min() : cv.index_1se();
  return SelectionMask::from_coefficients(cv.full_path[index].beta);
}

SelectionMethod make_lasso_selector(Family family, CvConfig config) {
  return [family, config](const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    return lasso_select(x, y, family, config);
  };
}

std::vector<int> stability_subsample(Eigen::Index n, std::uint64_t seed, int replicate) {
  RandomStream rng(seed, {static_cast<std::uint64_t>(replicate)});
  std::vector<int> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng.engine());
  rows.resize(static_cast<std::size_t>(n / 2));
  std::sort(rows.begin(), rows.end());
  return rows;
}

StabilityResult stability_selection(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                    const SelectionMethod& base, int replicates,
                                    double pi_threshold, std::uint64_t seed) {
  return stability_impl(x, y, base, replicates, pi_threshold, seed, true);
}

StabilityResult stability_selection_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                           const SelectionMethod& base, int replicates,
                                           double pi_threshold, std::uint64_t seed) {
  return stability_impl(x, y, base, replicates, pi_threshold, seed, false);
}

SelectionMask naive_selectboost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                const SelectionMethod& base, const GroupMap& groups) {
  if (groups.size() != static_cast<std::size_t>(x.cols())) {
    throw Error(ErrorCode::DimensionMismatch, "naive_selectboost: group map size differs from P");
  }
  SelectionMask mask = base(x, y);
  for (std::size_t p = 0; p < mask.size(); ++p) {
    if (!groups.singleton(p)) {
      mask.bits[p] = 0;
      if (mask.coefficients) (*mask.coefficients)(static_cast<Eigen::Index>(p)) = 0.0;
    }
  }
  return mask;
}

}  // namespace selectboost
