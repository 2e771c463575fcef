#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace selectboost {

struct DesignTable {
  Eigen::MatrixXd values;  // observations x variables
  std::vector<std::string> names;
};

// Design CSV: header row of variable names, one observation per row.
DesignTable read_design_csv(std::istream& in);
DesignTable read_design_csv(const std::filesystem::path& path);

// Response CSV: one value per row, optional non-numeric header line.
Eigen::VectorXd read_response_csv(std::istream& in);
Eigen::VectorXd read_response_csv(const std::filesystem::path& path);

void write_design_csv(std::ostream& out, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& names);
void write_response_csv(std::ostream& out, const Eigen::VectorXd& y, const std::string& name = "y");

/// 17 significant digits; round-trips every double.
std::string format_double(double value);

}  // namespace selectboost
