#include "selectboost/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "selectboost/error.hpp"
#include "selectboost/random.hpp"
#include "selectboost/sphere.hpp"

namespace selectboost {

namespace {

constexpr std::uint64_t kDataStream = 0xDA7A;
constexpr std::uint64_t kBoostStream = 0xB0057;
constexpr std::uint64_t kStabilityStream = 0x57AB;
constexpr double kMaxCondition = 1e12;

bool same_key(const MetricsRow& row, const MetricsSummary& summary) {
  return row.method == summary.method && row.c0 == summary.c0;
}

}  // namespace

void SimulationConfig::validate() const {
  if (N < 3 || P < 1 || q < 1 || n_clusters < 1 || repetitions < 1) {
    throw Error(ErrorCode::InvalidArgument, "simulation counts must be positive (N >= 3)");
  }
  if (q > P) throw Error(ErrorCode::InvalidArgument, "simulation needs q <= P");
  if (n_clusters > q) throw Error(ErrorCode::InvalidArgument, "simulation needs n_clusters <= q");
  if (!(within_cluster_noise >= 0.0) || !(response_noise >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "simulation noise scales must be non-negative");
  }
}

GroundTruthDataset generate_cluster_data(const SimulationConfig& config, int repetition) {
  config.validate();
  RandomStream rng(config.seed, {kDataStream, static_cast<std::uint64_t>(repetition)});
  const int n = config.N;
  Eigen::MatrixXd latent(n, config.n_clusters);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < config.n_clusters; ++l) latent(i, l) = rng.normal();
  }

  GroundTruthDataset data;
  data.X.resize(n, config.P);
  data.beta_true = Eigen::VectorXd::Zero(config.P);
  for (int j = 0; j < config.P; ++j) {
    if (j < config.q) {
      const int cluster = static_cast<int>(static_cast<long>(j) * config.n_clusters / config.q);
      for (int i = 0; i < n; ++i) {
        data.X(i, j) = latent(i, cluster) + config.within_cluster_noise * rng.normal();
      }
      data.beta_true(j) = 1.0;
      data.support.push_back(j);
    } else {
      for (int i = 0; i < n; ++i) data.X(i, j) = rng.normal();
    }
  }
  data.y_continuous = latent.rowwise().sum();
  for (int i = 0; i < n; ++i) data.y_continuous(i) += config.response_noise * rng.normal();
  data.y_binary = data.y_continuous.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  return data;
}

Metrics metrics(const SelectionMask& mask, const std::vector<int>& support) {
  std::size_t hits = 0;
  for (int j : support) hits += mask.bits.at(static_cast<std::size_t>(j)) != 0;
  const std::size_t selected = mask.count();
  Metrics m;
  m.selection = static_cast<double>(selected);
  m.recall = support.empty() ? 0.0 : static_cast<double>(hits) / support.size();
  m.precision = selected == 0 ? 0.0 : static_cast<double>(hits) / selected;
  m.fscore = m.recall + m.precision > 0.0
                 ? 2.0 * m.recall * m.precision / (m.recall + m.precision)
                 : 0.0;
  return m;
}

IrrepresentableResult irrepresentable_check(const Eigen::MatrixXd& x,
                                            const std::vector<int>& support,
                                            const std::vector<int>& beta_signs) {
  const Eigen::Index p = x.cols();
  if (support.empty()) throw Error(ErrorCode::InvalidArgument, "irrepresentable_check: empty support");
  if (beta_signs.size() != support.size()) {
    throw Error(ErrorCode::DimensionMismatch, "irrepresentable_check: one sign per support member");
  }
  std::vector<bool> in_support(static_cast<std::size_t>(p), false);
  for (int j : support) {
    if (j < 0 || j >= p) throw Error(ErrorCode::InvalidArgument, "support index out of range");
    if (in_support[static_cast<std::size_t>(j)]) {
      throw Error(ErrorCode::InvalidArgument, "support index listed twice");
    }
    in_support[static_cast<std::size_t>(j)] = true;
  }

  const auto s = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd active(x.rows(), s);
  Eigen::VectorXd signs(s);
  for (Eigen::Index k = 0; k < s; ++k) {
    active.col(k) = x.col(support[static_cast<std::size_t>(k)]);
    const int sign = beta_signs[static_cast<std::size_t>(k)];
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "signs must be +1 or -1");
    signs(k) = sign;
  }
  const Eigen::MatrixXd gram = active.transpose() * active;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& singular = svd.singularValues();
  const double smallest = singular(singular.size() - 1);
  if (!(smallest > 0.0) || singular(0) / smallest > kMaxCondition) {
    throw Error(ErrorCode::SingularGram, "support Gram matrix is numerically singular");
  }
  const Eigen::VectorXd direction = gram.ldlt().solve(signs);
  const Eigen::VectorXd projected = active * direction;

  IrrepresentableResult result;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!in_support[static_cast<std::size_t>(j)]) result.non_support.push_back(static_cast<int>(j));
  }
  result.values.resize(static_cast<Eigen::Index>(result.non_support.size()));
  for (std::size_t k = 0; k < result.non_support.size(); ++k) {
    result.values(static_cast<Eigen::Index>(k)) = std::abs(x.col(result.non_support[k]).dot(projected));
  }
  result.max_value = result.values.size() ? result.values.maxCoeff() : 0.0;
  result.holds = result.max_value < 1.0;
  return result;
}

std::string_view to_string(StudyMethod method) {
  switch (method) {
    case StudyMethod::Lasso: return "lasso";
    case StudyMethod::SelectBoost: return "selectboost";
    case StudyMethod::NaiveSelectBoost: return "naive_selectboost";
    case StudyMethod::Stability: return "stability";
  }
  return "unknown";
}

StudyMethod parse_study_method(std::string_view name) {
  if (name == "lasso") return StudyMethod::Lasso;
  if (name == "selectboost") return StudyMethod::SelectBoost;
  if (name == "naive_selectboost" || name == "naive") return StudyMethod::NaiveSelectBoost;
  if (name == "stability") return StudyMethod::Stability;
  throw Error(ErrorCode::InvalidArgument, "unknown study method '" + std::string(name) + "'");
}

bool depends_on_c0(StudyMethod method) {
  return method == StudyMethod::SelectBoost || method == StudyMethod::NaiveSelectBoost;
}

StudyReport run_study(const StudyConfig& config) {
  config.simulation.validate();
  check_c0_grid(config.c0_grid);
  StudyReport report;
  const SelectionMethod base = make_lasso_selector(config.family, config.cv);

  for (int rep = 0; rep < config.simulation.repetitions; ++rep) {
    const GroundTruthDataset data = generate_cluster_data(config.simulation, rep);
    const StandardizedDesign design = standardize(data.X);
    const Eigen::VectorXd& y =
        config.family == Family::Logistic ? data.y_binary : data.y_continuous;
    const Eigen::MatrixXd correlation = config.parallel ? correlation_matrix(design.values)
                                                        : correlation_matrix_serial(design.values);
    const auto rep_key = static_cast<std::uint64_t>(rep);
    std::optional<SelectionMask> base_mask;
    const SelectionMethod cached_base = [&](const Eigen::MatrixXd& x, const Eigen::VectorXd& r) {
      if (&x != &design.values || &r != &y) return base(x, r);
      if (!base_mask) base_mask = base(x, r);
      return *base_mask;
    };

    for (StudyMethod method : config.methods) {
      const std::size_t points = depends_on_c0(method) ? config.c0_grid.size() : 1;
      for (std::size_t g = 0; g < points; ++g) {
        MetricsRow row;
        row.repetition = rep;
        row.method = method;
        if (depends_on_c0(method)) row.c0 = config.c0_grid[g];
        try {
          SelectionMask mask;
          switch (method) {
            case StudyMethod::Lasso:
              mask = cached_base(design.values, y);
              break;
            case StudyMethod::SelectBoost: {
              const GroupMap groups = make_groups(correlation, config.c0_grid[g], config.strategy);
              const std::uint64_t seed = derive_key(config.simulation.seed, {kBoostStream, rep_key});
              FrequencyVector fv =
                  config.parallel ? boost(design.values, y, cached_base, groups, config.B, seed)
                                  : boost_serial(design.values, y, cached_base, groups, config.B, seed);
              fv.threshold = config.threshold;
              mask = select_at_threshold(fv);
              break;
            }
            case StudyMethod::NaiveSelectBoost: {
              const GroupMap groups = make_groups(correlation, config.c0_grid[g], config.strategy);
              mask = naive_selectboost(design.values, y, cached_base, groups);
              break;
            }
            case StudyMethod::Stability: {
              const std::uint64_t seed =
                  derive_key(config.simulation.seed, {kStabilityStream, rep_key});
              mask = config.parallel
                         ? stability_selection(design.values, y, base, config.stability_B,
                                               config.stability_threshold, seed)
                               .mask
                         : stability_selection_serial(design.values, y, base, config.stability_B,
                                                      config.stability_threshold, seed)
                               .mask;
              break;
            }
          }
          row.metrics = metrics(mask, data.support);
        } catch (const std::exception& error) {
          row.error = error.what();
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  report.summary = summarize(report.rows);
  return report;
}

std::vector<MetricsSummary> summarize(const std::vector<MetricsRow>& rows) {
  std::vector<MetricsSummary> out;
  std::vector<std::vector<const MetricsRow*>> members;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const MetricsSummary& s) { return same_key(row, s); });
    if (it == out.end()) {
      MetricsSummary s;
      s.method = row.method;
      s.c0 = row.c0;
      out.push_back(s);
      members.emplace_back();
      it = out.end() - 1;
    }
    const auto index = static_cast<std::size_t>(it - out.begin());
    if (row.error.empty()) {
      members[index].push_back(&row);
    } else {
      ++it->failures;
    }
  }

  auto field = [](const Metrics& m, int k) {
    return k == 0 ? m.recall : k == 1 ? m.precision : k == 2 ? m.fscore : m.selection;
  };
  auto assign = [](Metrics& m, int k, double v) {
    (k == 0 ? m.recall : k == 1 ? m.precision : k == 2 ? m.fscore : m.selection) = v;
  };
  for (std::size_t s = 0; s < out.size(); ++s) {
    const auto& group = members[s];
    out[s].count = static_cast<int>(group.size());
    if (group.empty()) continue;
    const double n = static_cast<double>(group.size());
    for (int k = 0; k < 4; ++k) {
      double mean = 0.0;
      for (const MetricsRow* row : group) mean += field(row->metrics, k);
      mean /= n;
      double spread = 0.0;
      for (const MetricsRow* row : group) spread += std::pow(field(row->metrics, k) - mean, 2);
      const double se = group.size() > 1 ? std::sqrt(spread / (n - 1.0) / n) : 0.0;
      assign(out[s].mean, k, mean);
      assign(out[s].standard_error, k, se);
    }
  }
  return out;
}

}  // namespace selectboost
