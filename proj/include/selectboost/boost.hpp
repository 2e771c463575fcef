#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "selectboost/grouping.hpp"
#include "selectboost/random.hpp"
#include "selectboost/selectors.hpp"
#include "selectboost/sphere.hpp"

namespace selectboost {

// Per-variable selection frequency over B perturbed replicates.
struct FrequencyVector {
  std::vector<double> zeta;
  std::vector<int> counts;  // zeta[p] == counts[p] / B
  int B = 0;
  double c0 = 1.0;
  double threshold = 1.0;
  long fallbacks = 0;  // groups copied unperturbed because their members cancelled out
};

struct PerturbationStats {
  long fallbacks = 0;
};

/// One perturbed copy of a standardized design. Column p is replaced by a
/// draw from the vMF law fitted to its sign-aligned group (in hyperplane
/// coordinates); singleton groups are copied unchanged.
Eigen::MatrixXd perturbed_design(const Eigen::MatrixXd& x, const GroupMap& groups,
                                 const HyperplaneBasis& basis, RandomStream& rng,
                                 PerturbationStats* stats = nullptr);

/// Selection frequencies over B independent perturbations. Replicate b draws
/// from the stream derived from (seed, b), so the result does not depend on
/// how replicates are scheduled across OpenMP threads.
FrequencyVector boost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      const SelectionMethod& select, const GroupMap& groups, int replicates,
                      std::uint64_t seed);
/// Serial reference for boost(); bit-identical output.
FrequencyVector boost_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             const SelectionMethod& select, const GroupMap& groups,
                             int replicates, std::uint64_t seed);

SelectionMask select_at_threshold(const FrequencyVector& fv);

// Confidence labels for the contiguous-prefix index, ordered by threshold.
struct ConfidenceBand {
  double min_gamma;
  std::string label;
};

std::vector<ConfidenceBand> default_confidence_bands();

struct ConfidencePath {
  std::vector<double> c0_grid;
  std::vector<std::vector<double>> zeta_by_c0;  // grid x P
  double threshold = 1.0;
  int B = 0;
  // 1 - smallest grid c0 at which zeta meets the threshold (0 if never).
  std::vector<double> gamma;
  // 1 - smallest c0 of the unbroken run of selected grid points starting at c0 = 1.
  std::vector<double> gamma_band;
  std::vector<std::string> band_label;
  long fallbacks = 0;
};

struct SweepConfig {
  std::vector<double> c0_grid;
  int B = 200;
  double threshold = 0.95;
  GroupingStrategy strategy = GroupingStrategy::Correlation;
  std::uint64_t seed = 1;
  bool parallel = true;
  std::vector<ConfidenceBand> bands = default_confidence_bands();
};

/// Evenly spaced decreasing grid from `start` to `stop`, values rounded to
/// 1e-10 so that e.g. 1 - 6 * 0.05 prints as 0.7.
std::vector<double> make_c0_grid(double start, double stop, double step);
void check_c0_grid(const std::vector<double>& grid);

ConfidencePath sweep(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const SelectionMethod& select, const SweepConfig& config);

/// Both confidence indices for one variable, given its per-grid selection flags.
double confidence_index(const std::vector<double>& grid, const std::vector<bool>& selected);
double contiguous_confidence_index(const std::vector<double>& grid,
                                   const std::vector<bool>& selected);

}  // namespace selectboost
