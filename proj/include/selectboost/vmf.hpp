#pragma once

#include <Eigen/Dense>

#include "selectboost/random.hpp"

namespace selectboost {

// von Mises-Fisher law on the unit sphere of R^d. A degenerate model is a
// point mass at `mu`: sampling returns `mu` bit-for-bit.
struct VmfModel {
  Eigen::VectorXd mu;
  double kappa = 0.0;
  bool degenerate = false;

  Eigen::Index dimension() const { return mu.size(); }
};

inline constexpr double kVmfKappaCap = 1e5;
inline constexpr long kVmfMaxRejections = 1'000'000;

/// Fits mean direction and concentration to the columns of `samples` (each a
/// unit vector). Concentration uses kappa = r(d - r^2) / (1 - r^2) with r the
/// mean resultant length. One sample, r > 1 - 1e-9, or kappa above
/// kVmfKappaCap gives a degenerate model.
VmfModel fit_vmf(const Eigen::Ref<const Eigen::MatrixXd>& samples);

/// Wood's rejection sampler. Writes into `out` (resized to d).
void sample_vmf(const VmfModel& model, RandomStream& rng, Eigen::VectorXd& out);
Eigen::VectorXd sample_vmf(const VmfModel& model, RandomStream& rng);

/// log f(x) = log C_d(kappa) + kappa <mu, x>, with
/// log C_d(kappa) = (d/2 - 1) log kappa - (d/2) log(2 pi) - log I_{d/2-1}(kappa).
double vmf_log_density(const VmfModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

double vmf_log_normalizer(Eigen::Index d, double kappa);

/// log I_nu(x), the modified Bessel function of the first kind, for nu >= 0,
/// x >= 0. Stable for x up to at least 1e6 and nu in the thousands.
double log_bessel_i(double nu, double x);

namespace detail {
double log_bessel_i_series(double nu, double x);
double log_bessel_i_uniform_asymptotic(double nu, double x);
double log_bessel_i_large_argument(double nu, double x);
}  // namespace detail

}  // namespace selectboost
