#include "martnorm/moment_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "martnorm/osekowski.hpp"

namespace martnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("moment order p >= 1 required");
}

}  // namespace

MomentProfile MomentProfile::bounded(double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("MomentProfile::bounded: m >= 0 required");
  MomentProfile prof;
  prof.fn_ = [m](double) { return m; };
  prof.label_ = "bounded(m=" + std::to_string(m) + ")";
  return prof;
}

MomentProfile MomentProfile::power_log(double c, double delta) {
  if (!(c > 0.0)) throw std::invalid_argument("MomentProfile::power_log: c > 0 required");
  if (!(delta >= 0.0)) throw std::invalid_argument("MomentProfile::power_log: delta >= 0 required");
  MomentProfile prof;
  prof.fn_ = [c, delta](double p) { return c * std::pow(p, delta) * std::log(p); };
  prof.label_ = "power_log(c=" + std::to_string(c) + ", delta=" + std::to_string(delta) + ")";
  return prof;
}

MomentProfile MomentProfile::heavy_tail(double b, double gamma, SlowlyVarying s) {
  if (!(b > 1.0)) throw std::invalid_argument("MomentProfile::heavy_tail: b > 1 required");
  MomentProfile prof;
  prof.p_sup_ = b;
  prof.fn_ = [b, gamma, s](double p) { return heavy_tail_psi(b, gamma, s, p); };
  prof.label_ = "heavy_tail(b=" + std::to_string(b) + ", gamma=" + std::to_string(gamma) +
                ", S=" + s.name + ")";
  return prof;
}

MomentProfile MomentProfile::tabulated(std::vector<double> p_grid, std::vector<double> values) {
  if (p_grid.size() != values.size() || p_grid.empty())
    throw std::invalid_argument("MomentProfile::tabulated: need matched nonempty grids");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] >= 1.0))
      throw std::invalid_argument("MomentProfile::tabulated: moment orders must be >= 1");
    if (i > 0 && !(p_grid[i] > p_grid[i - 1]))
      throw std::invalid_argument("MomentProfile::tabulated: p grid must be strictly increasing");
    if (!(values[i] >= 0.0) || std::isinf(values[i]))
      throw std::invalid_argument("MomentProfile::tabulated: values must be finite and >= 0");
    // moments of a fixed variable cannot decrease with the order
    if (i > 0 && values[i] < values[i - 1] * (1.0 - 1e-12))
      throw std::invalid_argument("MomentProfile::tabulated: values must be nondecreasing in p");
  }
  MomentProfile prof;
  prof.p_sup_ = p_grid.back();
  prof.label_ = "tabulated(" + std::to_string(p_grid.size()) + " points)";
  prof.fn_ = [p = std::move(p_grid), v = std::move(values)](double q) {
    if (q > p.back()) return kInf;
    const auto it = std::lower_bound(p.begin(), p.end(), q);
    if (it == p.begin()) return v.front();
    const std::size_t j = static_cast<std::size_t>(it - p.begin());
    if (j == p.size()) return v.back();  // q == p.back() handled by lower_bound end
    const double w = (q - p[j - 1]) / (p[j] - p[j - 1]);
    return v[j - 1] + w * (v[j] - v[j - 1]);
  };
  return prof;
}

MomentProfile MomentProfile::from_function(std::function<double(double)> mu, double finite_below,
                                           std::string label) {
  if (!mu) throw std::invalid_argument("MomentProfile::from_function: empty function");
  MomentProfile prof;
  prof.p_sup_ = finite_below;
  prof.fn_ = std::move(mu);
  prof.label_ = std::move(label);
  return prof;
}

double MomentProfile::operator()(double p) const {
  if (!fn_) throw std::logic_error("MomentProfile: evaluated before construction");
  check_order(p);
  if (p >= p_sup_) return kInf;
  return fn_(p);
}

MomentProfile MomentProfile::scaled(double c) const {
  if (!(c >= 0.0)) throw std::invalid_argument("MomentProfile::scaled: c >= 0 required");
  MomentProfile prof;
  prof.p_sup_ = p_sup_;
  prof.fn_ = [c, base = fn_](double p) { return c * base(p); };
  prof.label_ = std::to_string(c) + "*" + label_;
  return prof;
}

double nu_osekowski(double p, const MomentProfile& mu) {
  if (!(p >= 4.0)) throw std::domain_error("nu_osekowski: p >= 4 required");
  const double m = mu(p);
  if (std::isinf(m)) return kInf;  // outside the finiteness range
  return k_os() * (p / std::log(p)) * m;
}

double growth_factor(double p, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("growth_factor: kappa >= 0 required");
  if (!(p > std::max(kappa, 4.0)))
    throw std::domain_error("growth_factor: requires p > max(kappa, 4)");
  return (10.0 * p - kappa) / (p - kappa);
}

double rho(double p, double kappa, const MomentProfile& mu) {
  return nu_osekowski(p, mu) * growth_factor(p, kappa);
}

FinitenessInterval finiteness_interval(const MomentProfile& mu, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("finiteness_interval: kappa >= 0 required");
  FinitenessInterval j0;
  j0.p_minus = std::max(kappa, 4.0);
  j0.p_plus = mu.p_sup();
  j0.violated = !(j0.p_plus > j0.p_minus);
  return j0;
}

double BoundProfile::rho_at(double p) const { return rho(p, kappa, mu_); }

double BoundProfile::beta(double p) const {
  if (violated)
    throw std::runtime_error(
        "moment finiteness condition violated: no p > max(kappa,4) with finite rho");
  check_order(p);
  if (!(p < p_plus))
    throw std::domain_error("beta: moment order at or beyond the finiteness endpoint");
  if (p > p_minus) return rho_at(p);
  return rho_min;
}

BoundProfile make_bound_profile(const MomentProfile& mu, double kappa, double horizon,
                                BoundProfileOptions opts) {
  if (!(horizon >= 1.0)) throw std::invalid_argument("make_bound_profile: horizon >= 1 required");
  if (opts.grid_points < 2)
    throw std::invalid_argument("make_bound_profile: need at least 2 grid points");

  BoundProfile bound;
  bound.mu_ = mu;
  bound.kappa = kappa;
  bound.horizon = horizon;
  bound.profile_label = mu.describe();

  const FinitenessInterval j0 = finiteness_interval(mu, kappa);
  bound.p_minus = j0.p_minus;
  bound.p_plus = j0.p_plus;
  bound.violated = j0.violated;
  if (bound.violated) return bound;

  const double lo = bound.p_minus * (1.0 + 1e-6);
  double hi = std::min(bound.p_plus, opts.p_cap);
  if (!std::isinf(bound.p_plus) && hi == bound.p_plus) hi = bound.p_plus * (1.0 - 1e-6);
  if (!(hi > lo)) {
    bound.violated = true;  // the finiteness window is numerically empty
    return bound;
  }

  bound.p_grid.resize(static_cast<std::size_t>(opts.grid_points));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < opts.grid_points; ++i)
    bound.p_grid[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (opts.grid_points - 1.0));

  bound.nu_values.reserve(bound.p_grid.size());
  bound.rho_values.reserve(bound.p_grid.size());
  for (double p : bound.p_grid) {
    bound.nu_values.push_back(nu_osekowski(p, mu));
    bound.rho_values.push_back(rho(p, kappa, mu));
    bound.rho_min = std::min(bound.rho_min, bound.rho_values.back());
  }
  bound.beta_values = bound.rho_values;  // the stored grid lies inside J0
  return bound;
}

double martingale_moment_bound(double p, double n, const BoundProfile& bound) {
  if (!(n >= 1.0)) throw std::invalid_argument("martingale_moment_bound: n >= 1 required");
  return std::sqrt(n) * bound.beta(p);
}

}  // namespace martnorm
