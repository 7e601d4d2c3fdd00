#include "martnorm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace martnorm {

namespace {

constexpr double kInvE = 0.36787944117144232;  // 1/e

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < kInvE))
    throw std::invalid_argument("covering entropy: eps must lie in (0, 1/e)");
}

}  // namespace

std::vector<double> greedy_cover_radii(const Eigen::MatrixXd& cloud) {
  const Eigen::Index m = cloud.rows();
  if (m == 0) throw std::invalid_argument("greedy_cover_radii: empty cloud");
  const Eigen::VectorXd sq = cloud.rowwise().squaredNorm();
  // squared distance from every point to the current center set
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(m, std::numeric_limits<double>::infinity());
  std::vector<double> radii(static_cast<std::size_t>(m));
  Eigen::Index center = 0;  // first center: point 0 (deterministic)
  for (Eigen::Index k = 0; k < m; ++k) {
    dist = dist.cwiseMin(
        (sq.array() - 2.0 * (cloud * cloud.row(center).transpose()).array() + sq(center))
            .max(0.0)
            .matrix());
    Eigen::Index next;
    const double worst = dist.maxCoeff(&next);
    radii[static_cast<std::size_t>(k)] = std::sqrt(worst);
    center = next;
  }
  radii.back() = 0.0;  // every point is a center by then
  return radii;
}

std::int64_t cover_count_at(const std::vector<double>& radii, double eps) {
  if (radii.empty()) throw std::invalid_argument("cover_count_at: empty radii");
  if (!(eps > 0.0)) throw std::invalid_argument("cover_count_at: eps must be positive");
  // radii are nonincreasing and end at 0
  for (std::size_t k = 0; k < radii.size(); ++k)
    if (radii[k] <= eps) return static_cast<std::int64_t>(k) + 1;
  return static_cast<std::int64_t>(radii.size());
}

double covering_entropy(const Eigen::MatrixXd& cloud, double eps) {
  check_eps(eps);
  return std::log(static_cast<double>(cover_count_at(greedy_cover_radii(cloud), eps)));
}

double covering_entropy(const TensorExtremeSet& z, double eps, std::int64_t max_points,
                        std::uint64_t seed) {
  return covering_entropy(z.entry_cloud(max_points, seed), eps);
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid(12);
  const double lo = std::log(0.01), hi = std::log(0.3);
  for (int i = 0; i < 12; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 11.0);
  return grid;
}

EntropyProfile entropy_profile(const Eigen::MatrixXd& cloud, const std::vector<double>& eps_grid,
                               bool sampled_proxy, double saturation_fraction) {
  if (eps_grid.empty()) throw std::invalid_argument("entropy_profile: empty eps grid");
  for (double e : eps_grid) check_eps(e);
  const std::vector<double> radii = greedy_cover_radii(cloud);
  const auto saturated = static_cast<std::int64_t>(
      saturation_fraction * static_cast<double>(cloud.rows()));

  EntropyProfile prof;
  prof.eps = eps_grid;
  std::sort(prof.eps.begin(), prof.eps.end());
  for (double e : prof.eps) {
    const std::int64_t n = cover_count_at(radii, e);
    prof.counts.push_back(n);
    prof.entropy.push_back(std::log(static_cast<double>(n)));
    prof.used.push_back(!sampled_proxy || n <= saturated);
  }
  std::tie(prof.intercept, prof.slope) = entropic_dimension(prof.eps, prof.entropy, prof.used);
  return prof;
}

EntropyProfile entropy_profile(const TensorExtremeSet& z, const std::vector<double>& eps_grid,
                               std::int64_t max_points, std::uint64_t seed) {
  return entropy_profile(z.entry_cloud(max_points, seed), eps_grid, /*sampled_proxy=*/!z.finite());
}

std::pair<double, double> entropic_dimension(const std::vector<double>& eps,
                                             const std::vector<double>& entropy,
                                             const std::vector<bool>& used) {
  if (eps.size() != entropy.size() || (!used.empty() && used.size() != eps.size()))
    throw std::invalid_argument("entropic_dimension: mismatched input lengths");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!used.empty() && !used[i]) continue;
    check_eps(eps[i]);
    const double x = -std::log(eps[i]);
    sx += x;
    sy += entropy[i];
    sxx += x * x;
    sxy += x * entropy[i];
    ++n;
  }
  if (n < 4) throw std::invalid_argument("entropic_dimension: need at least 4 usable grid points");
  const double var = sxx - sx * sx / n;
  if (var <= 0.0) throw std::invalid_argument("entropic_dimension: degenerate eps grid");
  const double slope = std::max((sxy - sx * sy / n) / var, 0.0);
  return {(sy - slope * sx) / n, slope};
}

double estimate_kappa(const TensorExtremeSet& z, const std::vector<double>& eps_grid,
                      std::int64_t max_points, std::uint64_t seed) {
  return entropy_profile(z, eps_grid, max_points, seed).slope;
}

double analytic_kappa(const NormSpec& spec) {
  if (spec.finite_extremes() || spec.d == 1) return 0.0;
  return 2.0 * (spec.d - 1);
}

}  // namespace martnorm
