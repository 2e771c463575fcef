#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace selectboost {

// Design matrix whose columns are centered and scaled to unit L2 norm, so each
// column is a point on the unit sphere of the centering hyperplane.
struct StandardizedDesign {
  Eigen::MatrixXd values;
  Eigen::VectorXd column_means;
  Eigen::VectorXd column_scales;
  std::vector<std::string> variable_names;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Orthonormal basis of the hyperplane {v : sum(v) = 0} in R^N. Row n (0-based)
// is (e_1 + ... + e_{n+1} - (n+1) e_{n+2}) normalized.
struct HyperplaneBasis {
  Eigen::Index dimension = 0;
  Eigen::MatrixXd vectors;  // (N-1) x N
};

/// Centers every column and divides it by its centered L2 norm. Names default
/// to "V1".."VP" when `names` is empty.
StandardizedDesign standardize(const Eigen::MatrixXd& raw, std::vector<std::string> names = {});

HyperplaneBasis helmert_basis(Eigen::Index n);

// Process-wide cache keyed by N; the returned basis is immutable.
std::shared_ptr<const HyperplaneBasis> cached_helmert_basis(Eigen::Index n);

/// Coordinates of a centered vector in the basis. Runs in O(N) using the
/// prefix-sum structure of the rows instead of a dense product.
Eigen::VectorXd phi(const Eigen::Ref<const Eigen::VectorXd>& v, const HyperplaneBasis& basis);

Eigen::VectorXd phi_inverse(const Eigen::Ref<const Eigen::VectorXd>& w,
                            const HyperplaneBasis& basis);

namespace detail {
// Unchecked transforms shared by phi/phi_inverse and the perturbation kernel.
void helmert_forward(const double* v, Eigen::Index n, double* out);
void helmert_backward(const double* w, Eigen::Index n, double* out);
}  // namespace detail

}  // namespace selectboost
