#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "martnorm/normed_space.hpp"

namespace martnorm {

/// Entropy samples H(eps) = ln N(eps) over an eps grid, plus the fitted line
/// H ~ intercept + slope * ln(1/eps).  `used` marks the points that entered
/// the fit (sampled proxy clouds drop saturated scales, see estimate_kappa).
struct EntropyProfile {
  std::vector<double> eps;
  std::vector<std::int64_t> counts;
  std::vector<double> entropy;
  std::vector<bool> used;
  double intercept = 0.0;
  double slope = 0.0;
};

/// Greedy farthest-point insertion over the rows of `cloud` (one point per
/// row, Euclidean metric).  radii[k] is the covering radius achieved by the
/// first k+1 centers; the sequence is nonincreasing and ends at 0.
std::vector<double> greedy_cover_radii(const Eigen::MatrixXd& cloud);

/// Size of the greedy eps-cover: the smallest k with radii[k-1] <= eps.
std::int64_t cover_count_at(const std::vector<double>& radii, double eps);

/// ln of the greedy eps-cover size of a point cloud; requires 0 < eps < 1/e.
double covering_entropy(const Eigen::MatrixXd& cloud, double eps);

/// Same, on the flattened elements of a tensor extreme set (at most
/// max_points of them).
double covering_entropy(const TensorExtremeSet& z, double eps,
                        std::int64_t max_points = 10000,
                        std::uint64_t seed = kGeometrySeed);

/// 12 log-spaced radii in [0.01, 0.3] (inside (0, 1/e)).
std::vector<double> default_eps_grid();

/// Entropy at every grid eps; the cover is built once and reused across the
/// grid.  `sampled_proxy` enables the saturation mask: scales whose cover
/// swallows more than `saturation_fraction` of a *sampled* cloud say more
/// about the sample size than about the underlying set, so they are excluded
/// from the fit.  The fitted line is stored in the result.
EntropyProfile entropy_profile(const Eigen::MatrixXd& cloud, const std::vector<double>& eps_grid,
                               bool sampled_proxy, double saturation_fraction = 0.2);

EntropyProfile entropy_profile(const TensorExtremeSet& z,
                               const std::vector<double>& eps_grid = default_eps_grid(),
                               std::int64_t max_points = 10000,
                               std::uint64_t seed = kGeometrySeed);

/// Least-squares fit of entropy against ln(1/eps) over the masked points;
/// returns (intercept, slope) with the slope clamped below at 0.  Requires at
/// least 4 usable points, all inside (0, 1/e).
std::pair<double, double> entropic_dimension(const std::vector<double>& eps,
                                             const std::vector<double>& entropy,
                                             const std::vector<bool>& used = {});

/// The fitted entropy slope of a tensor extreme set's element cloud.
double estimate_kappa(const TensorExtremeSet& z,
                      const std::vector<double>& eps_grid = default_eps_grid(),
                      std::int64_t max_points = 10000, std::uint64_t seed = kGeometrySeed);

/// Entropy slope of the dual-pairing tensor set implied by `spec`, without
/// sampling: 0 when either side's extreme set is finite (p = 1, p = inf, or
/// d = 1), else 2(d-1) — two (d-1)-spheres' worth of directions.
double analytic_kappa(const NormSpec& spec);

}  // namespace martnorm
