#include "selectboost/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "selectboost/error.hpp"

namespace selectboost {

namespace {

void check_c0(double c0) {
  if (!(c0 >= 0.0 && c0 <= 1.0)) {
    throw Error(ErrorCode::C0OutOfRange, "c0 must lie in [0, 1], got " + std::to_string(c0));
  }
}

int sign_from(double correlation) { return correlation < 0.0 ? -1 : 1; }

double column_dot(const Eigen::MatrixXd& x, Eigen::Index i, Eigen::Index j) {
  const double* a = x.col(i).data();
  const double* b = x.col(j).data();
  double sum = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) sum += a[r] * b[r];
  return sum;
}

// Fills groups/signs from a membership predicate evaluated relative to p.
template <typename Member>
GroupMap build(const Eigen::MatrixXd& correlation, double c0, Member member) {
  const auto p_count = static_cast<std::size_t>(correlation.rows());
  GroupMap map;
  map.c0 = c0;
  map.groups.resize(p_count);
  map.signs.resize(p_count);
  for (std::size_t p = 0; p < p_count; ++p) {
    for (std::size_t q = 0; q < p_count; ++q) {
      if (q == p || member(p, q)) {
        map.groups[p].push_back(static_cast<int>(q));
        map.signs[p].push_back(q == p ? 1 : sign_from(correlation(p, q)));
      }
    }
  }
  return map;
}

GroupMap boundary_groups(std::size_t p_count, double c0) {
  GroupMap map;
  map.c0 = c0;
  map.groups.resize(p_count);
  map.signs.resize(p_count);
  for (std::size_t p = 0; p < p_count; ++p) {
    map.groups[p] = {static_cast<int>(p)};
    map.signs[p] = {1};
  }
  return map;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

bool GroupMap::all_singletons() const {
  return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.size() == 1; });
}

int GroupMap::sign_of(std::size_t p, int q) const {
  const auto& g = groups[p];
  const auto it = std::lower_bound(g.begin(), g.end(), q);
  if (it == g.end() || *it != q) return 0;
  return signs[p][static_cast<std::size_t>(it - g.begin())];
}

std::string_view to_string(GroupingStrategy strategy) {
  return strategy == GroupingStrategy::Correlation ? "correlation" : "community";
}

GroupingStrategy parse_grouping_strategy(std::string_view name) {
  if (name == "correlation") return GroupingStrategy::Correlation;
  if (name == "community") return GroupingStrategy::Community;
  throw Error(ErrorCode::InvalidArgument,
              "unknown grouping strategy '" + std::string(name) + "'");
}

Eigen::MatrixXd correlation_matrix_serial(const Eigen::MatrixXd& x) {
  const Eigen::Index p = x.cols();
  Eigen::MatrixXd c(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      c(i, j) = column_dot(x, i, j);
      c(j, i) = c(i, j);
    }
  }
  return c;
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& x) {
  const Eigen::Index p = x.cols();
  Eigen::MatrixXd c(p, p);
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      c(i, j) = column_dot(x, i, j);
      c(j, i) = c(i, j);
    }
  }
  return c;
}

GroupMap correlation_groups_from(const Eigen::MatrixXd& correlation, double c0) {
  check_c0(c0);
  const auto p_count = static_cast<std::size_t>(correlation.rows());
  if (c0 == 1.0) return boundary_groups(p_count, c0);
  if (c0 == 0.0) return build(correlation, c0, [](std::size_t, std::size_t) { return true; });
  return build(correlation, c0, [&](std::size_t p, std::size_t q) {
    return std::abs(correlation(p, q)) >= c0;
  });
}

GroupMap community_groups_from(const Eigen::MatrixXd& correlation, double c0) {
  check_c0(c0);
  const auto p_count = static_cast<std::size_t>(correlation.rows());
  if (c0 == 1.0) return boundary_groups(p_count, c0);
  if (c0 == 0.0) return build(correlation, c0, [](std::size_t, std::size_t) { return true; });

  DisjointSets sets(p_count);
  for (std::size_t i = 0; i < p_count; ++i) {
    for (std::size_t j = i + 1; j < p_count; ++j) {
      if (std::abs(correlation(i, j)) > c0) sets.unite(static_cast<int>(i), static_cast<int>(j));
    }
  }
  std::vector<int> root(p_count);
  for (std::size_t i = 0; i < p_count; ++i) root[i] = sets.find(static_cast<int>(i));
  return build(correlation, c0,
               [&](std::size_t p, std::size_t q) { return root[p] == root[q]; });
}

GroupMap correlation_groups(const StandardizedDesign& x, double c0) {
  check_c0(c0);
  return correlation_groups_from(correlation_matrix(x.values), c0);
}

GroupMap community_groups(const StandardizedDesign& x, double c0) {
  check_c0(c0);
  return community_groups_from(correlation_matrix(x.values), c0);
}

GroupMap make_groups(const Eigen::MatrixXd& correlation, double c0, GroupingStrategy strategy) {
  return strategy == GroupingStrategy::Correlation ? correlation_groups_from(correlation, c0)
                                                   : community_groups_from(correlation, c0);
}

}  // namespace selectboost
