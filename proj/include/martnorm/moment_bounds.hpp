#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "martnorm/gls.hpp"

namespace martnorm {

/// The moment envelope p -> mu_bar(p) of a martingale-difference family:
/// the largest p-th moment norm over steps and entries, +infinity beyond the
/// family's finiteness endpoint.  Nondecreasing in p (Lyapunov).
class MomentProfile {
 public:
  /// mu_bar(p) = m for all p (differences bounded by m).
  static MomentProfile bounded(double m);
  /// mu_bar(p) = c * p^delta * ln p; finite for every p.
  static MomentProfile power_log(double c, double delta);
  /// mu_bar(p) = (b-p)^(-(gamma+1)/b) * S(1/(b-p))^(1/b); finite only for p < b.
  static MomentProfile heavy_tail(double b, double gamma, SlowlyVarying s = sv_unit());
  /// Piecewise-linear in p on the tabulated grid; +infinity beyond it.
  static MomentProfile tabulated(std::vector<double> p_grid, std::vector<double> values);
  /// Arbitrary evaluation with a declared finiteness endpoint.
  static MomentProfile from_function(std::function<double(double)> mu,
                                     double finite_below = std::numeric_limits<double>::infinity(),
                                     std::string label = "custom");

  /// mu_bar(p); +infinity at or beyond the finiteness endpoint.  p >= 1.
  double operator()(double p) const;
  /// sup of the p with finite mu_bar.
  double p_sup() const { return p_sup_; }
  /// The profile multiplied pointwise by c >= 0.
  MomentProfile scaled(double c) const;
  const std::string& describe() const { return label_; }

 private:
  std::function<double(double)> fn_;
  double p_sup_ = std::numeric_limits<double>::infinity();
  std::string label_;
};

/// nu(p) = K * (p / ln p) * mu_bar(p), the linearized one-dimensional moment
/// bound scaled by the moment envelope; p >= 4.  +infinity passes through
/// when mu_bar(p) is infinite.
double nu_osekowski(double p, const MomentProfile& mu);

/// (10p - kappa) / (p - kappa): 10 at kappa = 0, larger otherwise, tending to
/// 10 as p grows.  Requires p > max(kappa, 4).
double growth_factor(double p, double kappa);

/// rho(p) = nu(p) * growth_factor(p, kappa); requires p > max(kappa, 4).
double rho(double p, double kappa, const MomentProfile& mu);

/// The interval J0 = (p_minus, p_plus) of moment orders where rho is finite;
/// `violated` flags an empty interval (no usable p), a reportable state
/// rather than an exception.
struct FinitenessInterval {
  double p_minus = 4.0;
  double p_plus = std::numeric_limits<double>::infinity();
  bool violated = false;
};

FinitenessInterval finiteness_interval(const MomentProfile& mu, double kappa);

struct BoundProfileOptions {
  int grid_points = 200;
  double p_cap = 1e3;  // upper end of the stored grid when p_plus is infinite
};

/// The full moment-bound chain on a p grid, plus exact evaluation off the
/// grid.  beta extends rho below J0 by its infimum over J0 (valid for every
/// moment order down to 1 by Lyapunov monotonicity of empirical moments).
class BoundProfile {
 public:
  std::vector<double> p_grid;
  std::vector<double> nu_values;
  std::vector<double> rho_values;
  std::vector<double> beta_values;
  double kappa = 0.0;
  double horizon = 1.0;  // n, the number of martingale steps
  double p_minus = 4.0;
  double p_plus = std::numeric_limits<double>::infinity();
  bool violated = false;
  double rho_min = std::numeric_limits<double>::infinity();  // inf over J0 of rho
  double c_z = 1.0;           // recorded aggregation constant (reporting only)
  std::string profile_label;  // recorded moment family (reporting only)

  /// Exact rho at any p in J0 (not interpolated).
  double rho_at(double p) const;
  /// beta(p): rho(p) inside (p_minus, p_plus), the J0 infimum of rho on
  /// [1, p_minus]; out of range or violated profiles throw.
  double beta(double p) const;

 private:
  friend BoundProfile make_bound_profile(const MomentProfile&, double, double,
                                         BoundProfileOptions);
  MomentProfile mu_;
};

BoundProfile make_bound_profile(const MomentProfile& mu, double kappa, double horizon,
                                BoundProfileOptions opts = {});

/// Upper bound sqrt(n) * beta(p) on the p-th moment norm of ||Theta(n)||.
double martingale_moment_bound(double p, double n, const BoundProfile& bound);

}  // namespace martnorm
