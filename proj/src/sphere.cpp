#include "selectboost/sphere.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "selectboost/error.hpp"

namespace selectboost {

namespace {
constexpr double kConstantColumnNorm = 1e-12;
constexpr double kHyperplaneTolerance = 1e-8;
}  // namespace

StandardizedDesign standardize(const Eigen::MatrixXd& raw, std::vector<std::string> names) {
  const Eigen::Index n = raw.rows();
  const Eigen::Index p = raw.cols();
  if (n < 3) {
    throw Error(ErrorCode::DimensionTooSmall,
                "standardize needs at least 3 observations, got " + std::to_string(n));
  }
  if (names.empty()) {
    names.reserve(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) names.push_back("V" + std::to_string(j + 1));
  }
  if (static_cast<Eigen::Index>(names.size()) != p) {
    throw Error(ErrorCode::DimensionMismatch, "variable name count does not match column count");
  }

  StandardizedDesign out;
  out.values.resize(n, p);
  out.column_means.resize(p);
  out.column_scales.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mean = raw.col(j).mean();
    Eigen::VectorXd centered = raw.col(j).array() - mean;
    const double norm = centered.norm();
    if (!(norm >= kConstantColumnNorm)) {
      throw Error(ErrorCode::ConstantColumn, "column '" + names[static_cast<std::size_t>(j)] +
                                                 "' is constant (or non-finite)",
                  static_cast<std::size_t>(j));
    }
    out.values.col(j) = centered / norm;
    out.column_means(j) = mean;
    out.column_scales(j) = norm;
  }
  out.variable_names = std::move(names);
  return out;
}

HyperplaneBasis helmert_basis(Eigen::Index n) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "helmert_basis needs N >= 2");
  HyperplaneBasis basis;
  basis.dimension = n;
  basis.vectors = Eigen::MatrixXd::Zero(n - 1, n);
  for (Eigen::Index row = 0; row < n - 1; ++row) {
    const double k = static_cast<double>(row + 1);
    const double scale = 1.0 / std::sqrt(k * (k + 1.0));
    basis.vectors.row(row).head(row + 1).setConstant(scale);
    basis.vectors(row, row + 1) = -k * scale;
  }
  return basis;
}

std::shared_ptr<const HyperplaneBasis> cached_helmert_basis(Eigen::Index n) {
  static std::mutex mutex;
  static std::map<Eigen::Index, std::shared_ptr<const HyperplaneBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const HyperplaneBasis>(helmert_basis(n));
  return slot;
}

namespace detail {

void helmert_forward(const double* v, Eigen::Index n, double* out) {
  double prefix = 0.0;
  for (Eigen::Index row = 0; row < n - 1; ++row) {
    prefix += v[row];
    const double k = static_cast<double>(row + 1);
    out[row] = (prefix - k * v[row + 1]) / std::sqrt(k * (k + 1.0));
  }
}

void helmert_backward(const double* w, Eigen::Index n, double* out) {
  // out_j = sum_{row >= j} w_row / sqrt(k(k+1)) - j * w_{j-1} / sqrt(j(j+1)),
  // with k = row + 1 and the second term present for j >= 1.
  double suffix = 0.0;
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    double value = suffix;
    if (j >= 1) {
      const double k = static_cast<double>(j);
      value -= k * w[j - 1] / std::sqrt(k * (k + 1.0));
    }
    out[j] = value;
    if (j >= 1) {
      const double k = static_cast<double>(j);
      suffix += w[j - 1] / std::sqrt(k * (k + 1.0));
    }
  }
}

}  // namespace detail

Eigen::VectorXd phi(const Eigen::Ref<const Eigen::VectorXd>& v, const HyperplaneBasis& basis) {
  if (v.size() != basis.dimension) {
    throw Error(ErrorCode::DimensionMismatch, "phi: vector length does not match basis dimension");
  }
  if (std::abs(v.sum()) > kHyperplaneTolerance * v.norm()) {
    throw Error(ErrorCode::NotInHyperplane, "phi: vector is not centered");
  }
  Eigen::VectorXd out(basis.dimension - 1);
  detail::helmert_forward(v.data(), basis.dimension, out.data());
  return out;
}

Eigen::VectorXd phi_inverse(const Eigen::Ref<const Eigen::VectorXd>& w,
                            const HyperplaneBasis& basis) {
  if (w.size() != basis.dimension - 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "phi_inverse: vector length does not match basis dimension - 1");
  }
  Eigen::VectorXd out(basis.dimension);
  detail::helmert_backward(w.data(), basis.dimension, out.data());
  return out;
}

}  // namespace selectboost
