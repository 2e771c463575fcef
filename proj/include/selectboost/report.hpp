#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "selectboost/boost.hpp"
#include "selectboost/grouping.hpp"
#include "selectboost/simulate.hpp"

namespace selectboost {

nlohmann::json group_map_json(const GroupMap& groups, const std::vector<std::string>& names,
                              GroupingStrategy strategy);

nlohmann::json confidence_path_json(const ConfidencePath& path,
                                    const std::vector<std::string>& names,
                                    const std::vector<ConfidenceBand>& bands);

/// Long format: c0,variable,zeta, one line per grid point and variable.
void write_confidence_long_csv(std::ostream& out, const ConfidencePath& path,
                               const std::vector<std::string>& names);

/// Per-variable confidence table. `coefficients` are the base-selector
/// coefficients on the standardized scale; `scales` map them back to the
/// original units of each column. Either may be empty.
void write_confidence_table_csv(std::ostream& out, const ConfidencePath& path,
                                const std::vector<std::string>& names,
                                const Eigen::VectorXd& coefficients,
                                const Eigen::VectorXd& scales);

/// One row per repetition x method x c0.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);

/// method,c0,mean recall/precision/fscore/selection: the precision-vs-recall
/// and selection-vs-precision tables, one row per method and c0.
void write_tradeoff_csv(std::ostream& out, const std::vector<MetricsSummary>& summary);

nlohmann::json study_summary_json(const StudyReport& report, const StudyConfig& config);

nlohmann::json irrepresentable_json(const IrrepresentableResult& result,
                                    const std::vector<std::string>& names);

}  // namespace selectboost
