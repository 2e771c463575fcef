#include "selectboost/vmf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "selectboost/error.hpp"

namespace selectboost {

namespace {
constexpr double kUnitNormTolerance = 1e-8;
constexpr double kZeroResultant = 1e-12;
constexpr double kDegenerateResultant = 1.0 - 1e-9;
}  // namespace

VmfModel fit_vmf(const Eigen::Ref<const Eigen::MatrixXd>& samples) {
  const Eigen::Index m = samples.cols();
  if (m < 1 || samples.rows() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "fit_vmf needs at least one sample in R^d, d >= 2");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(samples.col(i).norm() - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorCode::NotUnitNorm, "fit_vmf: sample " + std::to_string(i) + " is not unit norm",
                  static_cast<std::size_t>(i));
    }
  }
  const Eigen::VectorXd resultant = samples.rowwise().sum();
  const double length = resultant.norm();
  if (length < kZeroResultant) {
    throw Error(ErrorCode::ZeroResultant, "fit_vmf: samples cancel out (zero resultant)");
  }

  VmfModel model;
  model.mu = resultant / length;
  const double r = length / static_cast<double>(m);
  if (m == 1 || r > kDegenerateResultant) {
    model.kappa = std::numeric_limits<double>::infinity();
    model.degenerate = true;
    return model;
  }
  const double d = static_cast<double>(samples.rows());
  const double kappa = r * (d - r * r) / (1.0 - r * r);
  if (kappa > kVmfKappaCap) {
    model.kappa = kVmfKappaCap;
    model.degenerate = true;
  } else {
    model.kappa = kappa;
  }
  return model;
}

void sample_vmf(const VmfModel& model, RandomStream& rng, Eigen::VectorXd& out) {
  const Eigen::Index dim = model.dimension();
  if (model.degenerate) {
    out = model.mu;
    return;
  }
  if (dim < 2) throw Error(ErrorCode::DimensionTooSmall, "sample_vmf needs d >= 2");

  // Cosine w = <x, mu> has density proportional to exp(kappa w)(1 - w^2)^((d-3)/2).
  const double d1 = static_cast<double>(dim - 1);
  const double kappa = model.kappa;
  const double b = d1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + d1 * d1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + d1 * std::log(1.0 - x0 * x0);
  double w = 0.0;
  long attempt = 0;
  for (;; ++attempt) {
    if (attempt >= kVmfMaxRejections) {
      throw Error(ErrorCode::SamplerExhausted, "sample_vmf: rejection loop did not accept");
    }
    const double z = rng.beta(0.5 * d1, 0.5 * d1);
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform();
    if (kappa * w + d1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
  }

  // Uniform direction in the tangent space at mu.
  Eigen::VectorXd tangent(dim);
  double tangent_norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) tangent(i) = rng.normal();
    tangent -= tangent.dot(model.mu) * model.mu;
    tangent_norm = tangent.norm();
  } while (tangent_norm < 1e-12);
  tangent /= tangent_norm;

  out = w * model.mu + std::sqrt(std::max(0.0, 1.0 - w * w)) * tangent;
  out /= out.norm();
}

Eigen::VectorXd sample_vmf(const VmfModel& model, RandomStream& rng) {
  Eigen::VectorXd out;
  sample_vmf(model, rng, out);
  return out;
}

double vmf_log_normalizer(Eigen::Index d, double kappa) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "vmf_log_normalizer needs d >= 2");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorCode::InvalidArgument, "vmf_log_normalizer: kappa must be finite and >= 0");
  }
  const double half_d = 0.5 * static_cast<double>(d);
  const double nu = half_d - 1.0;
  const double log_2pi = std::log(2.0 * M_PI);
  if (kappa == 0.0) {
    // Limit kappa -> 0: reciprocal surface area of the sphere.
    return nu * std::log(2.0) + std::lgamma(nu + 1.0) - half_d * log_2pi;
  }
  return nu * std::log(kappa) - half_d * log_2pi - log_bessel_i(nu, kappa);
}

double vmf_log_density(const VmfModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (model.degenerate) {
    throw Error(ErrorCode::DegenerateModel, "vmf_log_density: model is a point mass");
  }
  if (x.size() != model.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "vmf_log_density: dimension mismatch");
  }
  if (std::abs(x.norm() - 1.0) > kUnitNormTolerance) {
    throw Error(ErrorCode::NotUnitNorm, "vmf_log_density: x is not unit norm");
  }
  return vmf_log_normalizer(model.dimension(), model.kappa) + model.kappa * model.mu.dot(x);
}

}  // namespace selectboost
