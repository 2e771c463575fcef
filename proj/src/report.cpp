#include "selectboost/report.hpp"

#include <ostream>

#include "selectboost/io.hpp"

namespace selectboost {

namespace {

nlohmann::json metrics_json(const Metrics& m) {
  return {{"recall", m.recall}, {"precision", m.precision}, {"fscore", m.fscore},
          {"selection", m.selection}};
}

std::string c0_cell(const std::optional<double>& c0) { return c0 ? format_double(*c0) : ""; }

}  // namespace

nlohmann::json group_map_json(const GroupMap& groups, const std::vector<std::string>& names,
                              GroupingStrategy strategy) {
  nlohmann::json variables = nlohmann::json::array();
  for (std::size_t p = 0; p < groups.size(); ++p) {
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t k = 0; k < groups.groups[p].size(); ++k) {
      const int q = groups.groups[p][k];
      members.push_back({{"index", q},
                         {"name", names[static_cast<std::size_t>(q)]},
                         {"sign", groups.signs[p][k]}});
    }
    variables.push_back({{"index", p},
                         {"name", names[p]},
                         {"size", groups.groups[p].size()},
                         {"members", std::move(members)}});
  }
  return {{"c0", groups.c0},
          {"strategy", std::string(to_string(strategy))},
          {"all_singletons", groups.all_singletons()},
          {"variables", std::move(variables)}};
}

nlohmann::json confidence_path_json(const ConfidencePath& path,
                                    const std::vector<std::string>& names,
                                    const std::vector<ConfidenceBand>& bands) {
  nlohmann::json band_list = nlohmann::json::array();
  for (const auto& band : bands) band_list.push_back({{"label", band.label}, {"min_gamma", band.min_gamma}});

  nlohmann::json variables = nlohmann::json::array();
  for (std::size_t p = 0; p < names.size(); ++p) {
    nlohmann::json zeta = nlohmann::json::array();
    for (const auto& row : path.zeta_by_c0) zeta.push_back(row[p]);
    variables.push_back({{"index", p},
                         {"name", names[p]},
                         {"zeta", std::move(zeta)},
                         {"gamma", path.gamma[p]},
                         {"gamma_contiguous", path.gamma_band[p]},
                         {"band", path.band_label[p]}});
  }
  return {{"c0_grid", path.c0_grid},
          {"B", path.B},
          {"threshold", path.threshold},
          {"zeta_by_c0", path.zeta_by_c0},
          {"bands", std::move(band_list)},
          {"unperturbed_group_fallbacks", path.fallbacks},
          {"variables", std::move(variables)}};
}

void write_confidence_long_csv(std::ostream& out, const ConfidencePath& path,
                               const std::vector<std::string>& names) {
  out << "c0,variable,zeta\n";
  for (std::size_t g = 0; g < path.c0_grid.size(); ++g) {
    for (std::size_t p = 0; p < names.size(); ++p) {
      out << format_double(path.c0_grid[g]) << ',' << names[p] << ','
          << format_double(path.zeta_by_c0[g][p]) << '\n';
    }
  }
}

void write_confidence_table_csv(std::ostream& out, const ConfidencePath& path,
                                const std::vector<std::string>& names,
                                const Eigen::VectorXd& coefficients,
                                const Eigen::VectorXd& scales) {
  out << "variable,gamma,gamma_contiguous,band,zeta_at_c0_1,coefficient,coefficient_original_scale\n";
  for (std::size_t p = 0; p < names.size(); ++p) {
    const auto j = static_cast<Eigen::Index>(p);
    out << names[p] << ',' << format_double(path.gamma[p]) << ','
        << format_double(path.gamma_band[p]) << ',' << path.band_label[p] << ','
        << format_double(path.zeta_by_c0.front()[p]) << ',';
    if (coefficients.size() > j) out << format_double(coefficients(j));
    out << ',';
    if (coefficients.size() > j && scales.size() > j) out << format_double(coefficients(j) / scales(j));
    out << '\n';
  }
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << "repetition,method,c0,recall,precision,fscore,selection,error\n";
  for (const auto& row : rows) {
    out << row.repetition << ',' << to_string(row.method) << ',' << c0_cell(row.c0) << ',';
    if (row.error.empty()) {
      out << format_double(row.metrics.recall) << ',' << format_double(row.metrics.precision)
          << ',' << format_double(row.metrics.fscore) << ','
          << format_double(row.metrics.selection) << ",\n";
    } else {
      std::string message = row.error;
      for (char& c : message) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << ",,,," << message << '\n';
    }
  }
}

void write_tradeoff_csv(std::ostream& out, const std::vector<MetricsSummary>& summary) {
  out << "method,c0,count,mean_recall,mean_precision,mean_fscore,mean_selection\n";
  for (const auto& s : summary) {
    out << to_string(s.method) << ',' << c0_cell(s.c0) << ',' << s.count << ','
        << format_double(s.mean.recall) << ',' << format_double(s.mean.precision) << ','
        << format_double(s.mean.fscore) << ',' << format_double(s.mean.selection) << '\n';
  }
}

nlohmann::json study_summary_json(const StudyReport& report, const StudyConfig& config) {
  const auto& sim = config.simulation;
  nlohmann::json methods = nlohmann::json::array();
  for (StudyMethod m : config.methods) methods.push_back(std::string(to_string(m)));

  nlohmann::json entries = nlohmann::json::array();
  for (const auto& s : report.summary) {
    entries.push_back({{"method", std::string(to_string(s.method))},
                       {"c0", s.c0 ? nlohmann::json(*s.c0) : nlohmann::json(nullptr)},
                       {"count", s.count},
                       {"failures", s.failures},
                       {"mean", metrics_json(s.mean)},
                       {"standard_error", metrics_json(s.standard_error)}});
  }
  return {{"config",
           {{"N", sim.N},
            {"P", sim.P},
            {"q", sim.q},
            {"n_clusters", sim.n_clusters},
            {"within_cluster_noise", sim.within_cluster_noise},
            {"response_noise", sim.response_noise},
            {"repetitions", sim.repetitions},
            {"seed", sim.seed},
            {"family", std::string(to_string(config.family))},
            {"grouping", std::string(to_string(config.strategy))},
            {"c0_grid", config.c0_grid},
            {"B", config.B},
            {"threshold", config.threshold},
            {"cv_k", config.cv.folds},
            {"lambda_rule", std::string(to_string(config.cv.rule))},
            {"stability_B", config.stability_B},
            {"stability_threshold", config.stability_threshold},
            {"methods", std::move(methods)}}},
          {"rows", report.rows.size()},
          {"summary", std::move(entries)}};
}

nlohmann::json irrepresentable_json(const IrrepresentableResult& result,
                                    const std::vector<std::string>& names) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t k = 0; k < result.non_support.size(); ++k) {
    const int j = result.non_support[k];
    values.push_back({{"index", j},
                      {"name", names[static_cast<std::size_t>(j)]},
                      {"value", result.values(static_cast<Eigen::Index>(k))}});
  }
  return {{"holds", result.holds}, {"max_value", result.max_value}, {"values", std::move(values)}};
}

}  // namespace selectboost
