#pragma once

// Slow, direct reference computations used to check the library.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/random.hpp"

namespace oracle {

// Helmert row n of the hyperplane basis, written out element by element.
inline Eigen::MatrixXd dense_helmert(Eigen::Index n) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n - 1, n);
  for (Eigen::Index r = 0; r < n - 1; ++r) {
    const double k = static_cast<double>(r + 1);
    const double norm = std::sqrt(k * (k + 1.0));
    for (Eigen::Index c = 0; c <= r; ++c) h(r, c) = 1.0 / norm;
    h(r, r + 1) = -k / norm;
  }
  return h;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  selectboost::RandomStream rng(seed, {0x7e57});
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

// log I_nu(x) = log[(x/2)^nu / (sqrt(pi) Gamma(nu + 1/2))] + x + log int_{-1}^{1} (1-t^2)^{nu-1/2} e^{x(t-1)} dt,
// with the integral done by composite Gauss-Legendre after t = cos(theta).
inline double log_bessel_i_integral(double nu, double x) {
  // t = cos(theta): (1-t^2)^{nu-1/2} dt = sin(theta)^{2 nu} dtheta on (0, pi)
  const int panels = 4000;
  const double nodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                           0.9061798459386640};
  const double weights[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                             0.2369268850561891, 0.2369268850561891};
  const double width = std::numbers::pi / panels;
  // Largest exponent, for scaling.
  double peak = -1e300;
  for (int k = 0; k <= 20 * panels; ++k) {
    const double th = std::numbers::pi * k / (20.0 * panels);
    const double s = std::sin(th);
    const double e = x * (std::cos(th) - 1.0) + (s > 0 ? 2.0 * nu * std::log(s) : -1e300);
    peak = std::max(peak, e);
  }
  long double sum = 0.0L;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (int q = 0; q < 5; ++q) {
      const double th = mid + 0.5 * width * nodes[q];
      const double s = std::sin(th);
      const double e = x * (std::cos(th) - 1.0) + 2.0 * nu * std::log(s) - peak;
      sum += 0.5L * width * weights[q] * std::exp(static_cast<long double>(e));
    }
  }
  return nu * std::log(x / 2.0) - 0.5 * std::log(std::numbers::pi) - std::lgamma(nu + 0.5) + x +
         peak + std::log(static_cast<double>(sum));
}

// vMF density on S^2 in closed form.
inline double vmf3_log_density(double kappa, double cosine) {
  return std::log(kappa / (4.0 * std::numbers::pi * std::sinh(kappa))) + kappa * cosine;
}

struct SetMetrics {
  double recall, precision, fscore, selection;
};

inline SetMetrics set_metrics(const std::vector<int>& selected, const std::vector<int>& truth) {
  std::set<int> s(selected.begin(), selected.end());
  std::set<int> t(truth.begin(), truth.end());
  std::vector<int> both;
  std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(both));
  const double tp = static_cast<double>(both.size());
  const double recall = t.empty() ? 0.0 : tp / t.size();
  const double precision = s.empty() ? 0.0 : tp / s.size();
  const double f = recall + precision > 0 ? 2 * recall * precision / (recall + precision) : 0.0;
  return {recall, precision, f, static_cast<double>(s.size())};
}

// Components of the graph {|c_ij| > c0} by repeated breadth-first search.
inline std::vector<int> component_labels(const Eigen::MatrixXd& c, double c0) {
  const int p = static_cast<int>(c.rows());
  std::vector<int> label(p, -1);
  int next = 0;
  for (int s = 0; s < p; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> queue{s};
    label[s] = next;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int v = 0; v < p; ++v) {
        if (label[v] < 0 && std::abs(c(u, v)) > c0) {
          label[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

// Stationarity residual of the lasso: max over j of the distance from the
// (negative) loss gradient to lambda * subdifferential of |beta_j|, plus the
// intercept gradient.
inline double kkt_residual(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& beta, double b0, double lambda, bool logistic) {
  const Eigen::Index n = x.rows();
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eta = b0 + x.row(i).dot(beta);
    if (logistic) {
      const double t = 0.5 * (y(i) + 1.0);
      r(i) = t - 1.0 / (1.0 + std::exp(-eta));
    } else {
      r(i) = y(i) - eta;
    }
  }
  double worst = std::abs(r.sum() / n);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double g = x.col(j).dot(r) / n;
    double gap;
    if (beta(j) > 0) gap = std::abs(g - lambda);
    else if (beta(j) < 0) gap = std::abs(g + lambda);
    else gap = std::max(0.0, std::abs(g) - lambda);
    worst = std::max(worst, gap);
  }
  return worst;
}

}  // namespace oracle
