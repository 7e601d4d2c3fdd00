#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "martnorm/rng.hpp"

namespace martnorm {

// Seed used whenever a deterministic point cloud is needed and the caller
// does not supply one.
inline constexpr std::uint64_t kGeometrySeed = 0x67656f6d5eedull;

/// An l^p norm on R^d.  p = +infinity selects the max norm.
struct NormSpec {
  int d = 0;
  double p = 2.0;

  static NormSpec lp(int d, double p);
  static NormSpec l1(int d) { return lp(d, 1.0); }
  static NormSpec l2(int d) { return lp(d, 2.0); }
  static NormSpec linf(int d) { return lp(d, std::numeric_limits<double>::infinity()); }

  bool is_inf() const { return std::isinf(p); }
  // The extreme points of the unit ball form a finite set exactly for p = 1
  // (signed coordinate vectors) and p = inf (sign corners).  For 1 < p < inf
  // the ball is strictly convex, so every sphere point is extreme.
  bool finite_extremes() const { return p == 1.0 || is_inf(); }
  std::string describe() const;
};

/// Hoelder-conjugate space: 1 <-> inf, 2 <-> 2, p <-> p/(p-1).
NormSpec dual(const NormSpec& s);

/// l^p norm of a vector expression; p >= 1, p = inf for the max norm.
template <typename Derived>
double vector_norm(const Eigen::MatrixBase<Derived>& v, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("vector_norm: p >= 1 required");
  if (v.size() == 0) return 0.0;
  if (std::isinf(p)) return v.derived().cwiseAbs().maxCoeff();
  if (p == 1.0) return v.derived().cwiseAbs().sum();
  if (p == 2.0) return v.derived().norm();
  // scale by the max entry so large p cannot overflow
  const double m = v.derived().cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  const double s = (v.derived().cwiseAbs() / m).array().pow(p).sum();
  return m * std::pow(s, 1.0 / p);
}

template <typename Derived>
double vector_norm(const Eigen::MatrixBase<Derived>& v, const NormSpec& spec) {
  if (v.size() != spec.d)
    throw std::invalid_argument("vector_norm: vector length does not match spec dimension");
  return vector_norm(v, spec.p);
}

/// Spectral norm = largest singular value.  Closed form when the smaller side
/// has dimension <= 2, otherwise power iteration on the Gram matrix with a
/// deterministic seeded start vector.
double spectral_norm(const Eigen::MatrixXd& a, double tol = 1e-10);

/// The power-iteration path of spectral_norm, exposed so it can be checked
/// against the closed form and against a full eigendecomposition.
double spectral_norm_power_iteration(const Eigen::MatrixXd& a, double tol = 1e-10,
                                     int max_iter = 100000);

/// Operator norm sup ||Ax|| / ||x|| of a square matrix under an l^p norm.
/// Exact for p in {1, 2, inf}; for other p estimated as a max over a seeded
/// sample of the unit sphere (a lower estimate converging from below).
double operator_norm(const Eigen::MatrixXd& a, const NormSpec& spec,
                     int sample_count = 10000, std::uint64_t seed = kGeometrySeed);

struct ExtremePointSet;

/// Same, but reusing a prebuilt unit-sphere sample for the general-p branch
/// (the exact branches ignore it).  Avoids rebuilding the cloud per matrix in
/// tight loops.
double operator_norm(const Eigen::MatrixXd& a, const NormSpec& spec,
                     const ExtremePointSet& sphere);

/// Extreme points of the unit ball of a NormSpec.  `finite` marks the stored
/// columns as the complete extreme set; otherwise they are a deterministic
/// low-discrepancy sample of the (continuum) extreme set.
struct ExtremePointSet {
  NormSpec spec;
  bool finite = false;
  Eigen::MatrixXd points;  // d x N, one unit-norm point per column
  std::uint64_t seed = 0;
  int halton_offset = 0;  // first prime index used by the sampler

  Eigen::Index size() const { return points.cols(); }
};

/// Builds the extreme set: +-e_i for l1, the sign corners for linf (sampled
/// once d makes 2^d unreasonable), and low-discrepancy sphere samples for
/// 1 < p < inf.  halton_offset selects which primes drive the sampler so that
/// two independent clouds can coexist.
ExtremePointSet extreme_points(const NormSpec& spec, std::uint64_t seed = kGeometrySeed,
                               int sample_count = 10000, int halton_offset = 0);

/// A one-point "extreme set", used to tensor a sphere with a fixed direction.
ExtremePointSet fixed_point_set(const Eigen::VectorXd& x);

/// The rank-one set Z = { x y^T : x in x_side, y in y_side }.  When both
/// sides are complete finite sets, Z is the full product; otherwise elements
/// are index-aligned sampled pairs (x_k, y_k) and size() is the pair count.
struct TensorExtremeSet {
  ExtremePointSet x_side;
  ExtremePointSet y_side;

  bool finite() const { return x_side.finite && y_side.finite; }
  std::int64_t size() const;
  // k-th element as its two factors
  void pair(std::int64_t k, Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  // k-th element as a d_x x d_y rank-one matrix
  Eigen::MatrixXd element(std::int64_t k) const;
  // up to max_points elements flattened row-wise into a cloud, one vectorized
  // rank-one matrix per row; deterministic selection when size() exceeds it
  Eigen::MatrixXd entry_cloud(std::int64_t max_points = 10000,
                              std::uint64_t seed = kGeometrySeed) const;
};

TensorExtremeSet tensor_extreme_set(ExtremePointSet x_side, ExtremePointSet y_side);

/// Tensor set whose bilinear maximum realizes the operator norm under `spec`:
/// the row side carries the extreme points of the dual ball, the column side
/// those of the primal ball, so max |x^T A y| = sup ||Ay||/||y||.
TensorExtremeSet dual_pairing_tensor_set(const NormSpec& spec,
                                         std::uint64_t seed = kGeometrySeed,
                                         int sample_count = 10000);

/// max over z in Z of sum_{ij} Theta(i,j) z(i,j) = max |x^T Theta y|.
double bilinear_norm(const Eigen::MatrixXd& theta, const TensorExtremeSet& z);

/// sup of ||x||_1 over the given norm's unit sphere: d^(1 - 1/p).
double max_l1_on_sphere(const NormSpec& spec);

/// sup over z in Z of sum_{ij} |z(i,j)| = product of the two sides' l1 maxima,
/// evaluated on the full extreme sets (not just the stored samples).
double l1_mass_envelope(const TensorExtremeSet& z);

}  // namespace martnorm
