#include <algorithm>
#include <cmath>
#include <limits>

#include "selectboost/error.hpp"
#include "selectboost/vmf.hpp"

namespace selectboost {

namespace {
constexpr double kAsymptoticOrder = 50.0;
constexpr double kSeriesMaxArgument = 30.0;
}  // namespace

namespace detail {

// Power series sum_k (x^2/4)^k / (k! Gamma(nu + k + 1)); all terms are positive
// so the sum is accumulated relative to its running maximum term.
double log_bessel_i_series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double quarter_x2 = 0.25 * x * x;
  double log_term = 0.0;
  double log_max = 0.0;
  double scaled_sum = 1.0;  // sum / exp(log_max)
  for (int k = 1; k < 1000000; ++k) {
    const double ratio = quarter_x2 / (static_cast<double>(k) * (nu + k));
    log_term += std::log(ratio);
    if (log_term > log_max) {
      scaled_sum = scaled_sum * std::exp(log_max - log_term) + 1.0;
      log_max = log_term;
    } else {
      const double rel = std::exp(log_term - log_max);
      scaled_sum += rel;
      if (ratio < 0.5 && rel < 1e-17 * scaled_sum) break;
    }
  }
  return nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) + log_max + std::log(scaled_sum);
}

// Hankel expansion exp(-x) I_nu(x) ~ (2 pi x)^(-1/2) sum_k (-1)^k a_k(nu) / x^k, cut at
// the smallest term. Used only for x > 2 nu^2, where the terms shrink at least 4x per step.
double log_bessel_i_large_argument(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

// Debye uniform expansion of I_nu(nu z) through the fourth correction term.
double log_bessel_i_uniform_asymptotic(double nu, double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  const double z = x / nu;
  const double root = std::sqrt(1.0 + z * z);
  const double t = 1.0 / root;
  const double eta = root + std::log(z / (1.0 + root));
  const double t2 = t * t;
  const double u1 = t * (3.0 - 5.0 * t2) / 24.0;
  const double u2 = t2 * (81.0 - 462.0 * t2 + 385.0 * t2 * t2) / 1152.0;
  const double u3 =
      t * t2 * (30375.0 - 369603.0 * t2 + 765765.0 * t2 * t2 - 425425.0 * t2 * t2 * t2) /
      414720.0;
  const double t4 = t2 * t2;
  const double u4 = t4 *
                    (4465125.0 - 94121676.0 * t2 + 349922430.0 * t4 - 446185740.0 * t4 * t2 +
                     185910725.0 * t4 * t4) /
                    39813120.0;
  const double correction = 1.0 + u1 / nu + u2 / (nu * nu) + u3 / (nu * nu * nu) +
                            u4 / (nu * nu * nu * nu);
  return -0.5 * std::log(2.0 * M_PI * nu) + nu * eta + 0.5 * std::log(t) +
         std::log(correction);
}

}  // namespace detail

double log_bessel_i(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, "log_bessel_i: requires nu >= 0 and finite x >= 0");
  }
  if (nu >= kAsymptoticOrder) return detail::log_bessel_i_uniform_asymptotic(nu, x);

  if (x <= std::max(kSeriesMaxArgument, 2.0 * nu * nu)) return detail::log_bessel_i_series(nu, x);
  return detail::log_bessel_i_large_argument(nu, x);
}

}  // namespace selectboost
