#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/sphere.hpp"

namespace selectboost {

// gr_{c0}: for every variable p, the sorted indices of the variables linked to
// it (always including p) and the sign of each member's correlation with p.
struct GroupMap {
  double c0 = 1.0;
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<int>> signs;  // signs[p][k] pairs with groups[p][k]

  std::size_t size() const { return groups.size(); }
  bool singleton(std::size_t p) const { return groups[p].size() == 1; }
  bool all_singletons() const;
  int sign_of(std::size_t p, int q) const;  // 0 when q is not in groups[p]
};

enum class GroupingStrategy { Correlation, Community };

std::string_view to_string(GroupingStrategy strategy);
GroupingStrategy parse_grouping_strategy(std::string_view name);

/// Gram matrix of the columns; for a standardized design this is the
/// correlation matrix. Columns are distributed over OpenMP threads.
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& x);
/// Single-threaded reference; produces bit-identical output.
Eigen::MatrixXd correlation_matrix_serial(const Eigen::MatrixXd& x);

/// groups[p] = { q : |corr(p, q)| >= c0 }. c0 = 1 forces singletons and
/// c0 = 0 the universal group, whatever the data.
GroupMap correlation_groups(const StandardizedDesign& x, double c0);
GroupMap correlation_groups_from(const Eigen::MatrixXd& correlation, double c0);

/// Connected components of the graph with an edge wherever |corr(i, j)| > c0.
GroupMap community_groups(const StandardizedDesign& x, double c0);
GroupMap community_groups_from(const Eigen::MatrixXd& correlation, double c0);

GroupMap make_groups(const Eigen::MatrixXd& correlation, double c0, GroupingStrategy strategy);

}  // namespace selectboost
