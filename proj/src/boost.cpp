#include "selectboost/boost.hpp"

#include <cmath>
#include <string>

#include "selectboost/error.hpp"
#include "selectboost/parallel.hpp"
#include "selectboost/vmf.hpp"

namespace selectboost {

namespace {

constexpr double kCountSlack = 1e-9;

double round_grid(double value) { return std::round(value * 1e10) / 1e10; }
double round_gamma(double value) { return std::round(value * 1e12) / 1e12; }

FrequencyVector boost_impl(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const SelectionMethod& select, const GroupMap& groups,
                           int replicates, std::uint64_t seed, bool parallel) {
  if (replicates < 1) throw Error(ErrorCode::InvalidArgument, "boost needs B >= 1");
  if (groups.size() != static_cast<std::size_t>(x.cols())) {
    throw Error(ErrorCode::DimensionMismatch, "boost: group map size differs from P");
  }
  if (y.size() != x.rows()) throw Error(ErrorCode::DimensionMismatch, "boost: response length differs");

  const auto p = static_cast<std::size_t>(x.cols());
  if (groups.all_singletons()) {
    // Every replicate would see x itself; one call gives all B masks.
    const SelectionMask mask = select(x, y);
    if (mask.size() != p) throw Error(ErrorCode::DimensionMismatch, "selection method returned wrong length");
    FrequencyVector fv;
    fv.B = replicates;
    fv.c0 = groups.c0;
    fv.counts.resize(p);
    fv.zeta.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
      fv.counts[j] = mask.bits[j] ? replicates : 0;
      fv.zeta[j] = mask.bits[j] ? 1.0 : 0.0;
    }
    return fv;
  }

  const auto basis = cached_helmert_basis(x.rows());
  std::vector<std::vector<std::uint8_t>> bits(static_cast<std::size_t>(replicates));
  std::vector<long> fallbacks(static_cast<std::size_t>(replicates), 0);
  detail::for_each_index(replicates, parallel, [&](int b) {
    RandomStream rng(seed, {static_cast<std::uint64_t>(b)});
    PerturbationStats stats;
    const Eigen::MatrixXd perturbed = perturbed_design(x, groups, *basis, rng, &stats);
    SelectionMask mask = select(perturbed, y);
    if (mask.size() != p) throw Error(ErrorCode::DimensionMismatch, "selection method returned wrong length");
    bits[static_cast<std::size_t>(b)] = std::move(mask.bits);
    fallbacks[static_cast<std::size_t>(b)] = stats.fallbacks;
  });

  FrequencyVector fv;
  fv.B = replicates;
  fv.c0 = groups.c0;
  fv.counts.assign(p, 0);
  for (std::size_t b = 0; b < bits.size(); ++b) {
    for (std::size_t j = 0; j < p; ++j) fv.counts[j] += bits[b][j];
    fv.fallbacks += fallbacks[b];
  }
  fv.zeta.resize(p);
  for (std::size_t j = 0; j < p; ++j) fv.zeta[j] = static_cast<double>(fv.counts[j]) / replicates;
  return fv;
}

bool meets(int count, int replicates, double threshold) {
  return static_cast<double>(count) >= threshold * replicates - kCountSlack;
}

}  // namespace

Eigen::MatrixXd perturbed_design(const Eigen::MatrixXd& x, const GroupMap& groups,
                                 const HyperplaneBasis& basis, RandomStream& rng,
                                 PerturbationStats* stats) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (basis.dimension != n) throw Error(ErrorCode::DimensionMismatch, "perturbed_design: basis dimension differs from N");
  if (groups.size() != static_cast<std::size_t>(p)) {
    throw Error(ErrorCode::DimensionMismatch, "perturbed_design: group map size differs from P");
  }

  // Hyperplane coordinates of every column, computed once and shared by groups.
  Eigen::MatrixXd embedded(n - 1, p);
  bool needs_embedding = false;
  for (std::size_t j = 0; j < groups.size(); ++j) needs_embedding |= !groups.singleton(j);
  if (needs_embedding) {
    for (Eigen::Index j = 0; j < p; ++j) {
      detail::helmert_forward(x.col(j).data(), n, embedded.col(j).data());
    }
  }

  Eigen::MatrixXd out(n, p);
  Eigen::MatrixXd members;
  Eigen::VectorXd draw;
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& group = groups.groups[static_cast<std::size_t>(j)];
    const auto& signs = groups.signs[static_cast<std::size_t>(j)];
    if (group.size() == 1) {
      out.col(j) = x.col(j);
      continue;
    }
    members.resize(n - 1, static_cast<Eigen::Index>(group.size()));
    for (std::size_t k = 0; k < group.size(); ++k) {
      members.col(static_cast<Eigen::Index>(k)) = signs[k] * embedded.col(group[k]);
    }
    VmfModel model;
    try {
      model = fit_vmf(members);
    } catch (const Error& error) {
      if (error.code() != ErrorCode::ZeroResultant) throw;
      out.col(j) = x.col(j);
      if (stats) ++stats->fallbacks;
      continue;
    }
    sample_vmf(model, rng, draw);
    detail::helmert_backward(draw.data(), n, out.col(j).data());
    out.col(j) /= out.col(j).norm();
  }
  return out;
}

FrequencyVector boost(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      const SelectionMethod& select, const GroupMap& groups, int replicates,
                      std::uint64_t seed) {
  return boost_impl(x, y, select, groups, replicates, seed, true);
}

FrequencyVector boost_serial(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             const SelectionMethod& select, const GroupMap& groups,
                             int replicates, std::uint64_t seed) {
  return boost_impl(x, y, select, groups, replicates, seed, false);
}

SelectionMask select_at_threshold(const FrequencyVector& fv) {
  SelectionMask mask = SelectionMask::empty(fv.zeta.size());
  for (std::size_t j = 0; j < fv.zeta.size(); ++j) {
    mask.bits[j] = fv.zeta[j] >= fv.threshold ||
                   (!fv.counts.empty() && meets(fv.counts[j], fv.B, fv.threshold));
  }
  return mask;
}

std::vector<ConfidenceBand> default_confidence_bands() {
  return {{0.15, "low"}, {0.25, "intermediate"}, {0.30, "high"}};
}

std::vector<double> make_c0_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(start >= stop)) {
    throw Error(ErrorCode::InvalidArgument, "c0 grid needs start >= stop and a positive step");
  }
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double value = round_grid(start - k * step);
    if (value < stop - 1e-9) break;
    grid.push_back(value);
  }
  return grid;
}

void check_c0_grid(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "c0 grid must start at 1");
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] >= 0.0 && grid[g] <= 1.0)) {
      throw Error(ErrorCode::C0OutOfRange, "c0 grid values must lie in [0, 1]");
    }
    if (g > 0 && !(grid[g] < grid[g - 1])) {
      throw Error(ErrorCode::InvalidArgument, "c0 grid must be strictly decreasing");
    }
  }
}

double confidence_index(const std::vector<double>& grid, const std::vector<bool>& selected) {
  double lowest = 1.0;
  bool any = false;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (selected[g]) {
      lowest = any ? std::min(lowest, grid[g]) : grid[g];
      any = true;
    }
  }
  return any ? round_gamma(1.0 - lowest) : 0.0;
}

double contiguous_confidence_index(const std::vector<double>& grid,
                                   const std::vector<bool>& selected) {
  std::size_t run = 0;
  while (run < grid.size() && selected[run]) ++run;
  return run == 0 ? 0.0 : round_gamma(1.0 - grid[run - 1]);
}

ConfidencePath sweep(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const SelectionMethod& select, const SweepConfig& config) {
  check_c0_grid(config.c0_grid);
  if (!(config.threshold > 0.0 && config.threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in (0, 1]");
  }
  const Eigen::MatrixXd correlation =
      config.parallel ? correlation_matrix(x) : correlation_matrix_serial(x);

  ConfidencePath path;
  path.c0_grid = config.c0_grid;
  path.threshold = config.threshold;
  path.B = config.B;
  const auto p = static_cast<std::size_t>(x.cols());
  std::vector<std::vector<bool>> selected(p, std::vector<bool>(config.c0_grid.size(), false));
  for (std::size_t g = 0; g < config.c0_grid.size(); ++g) {
    const GroupMap groups = make_groups(correlation, config.c0_grid[g], config.strategy);
    FrequencyVector fv = config.parallel ? boost(x, y, select, groups, config.B, config.seed)
                                         : boost_serial(x, y, select, groups, config.B, config.seed);
    fv.threshold = config.threshold;
    const SelectionMask mask = select_at_threshold(fv);
    for (std::size_t j = 0; j < p; ++j) selected[j][g] = mask.bits[j] != 0;
    path.fallbacks += fv.fallbacks;
    path.zeta_by_c0.push_back(std::move(fv.zeta));
  }

  path.gamma.resize(p);
  path.gamma_band.resize(p);
  path.band_label.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    path.gamma[j] = confidence_index(config.c0_grid, selected[j]);
    path.gamma_band[j] = contiguous_confidence_index(config.c0_grid, selected[j]);
    std::string label = "none";
    for (const auto& band : config.bands) {
      if (path.gamma_band[j] >= band.min_gamma - 1e-9) label = band.label;
    }
    path.band_label[j] = label;
  }
  return path;
}

}  // namespace selectboost
