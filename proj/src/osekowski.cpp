#include "martnorm/osekowski.hpp"

#include <cmath>
#include <stdexcept>

namespace martnorm {

double os_constant(double p) {
  if (!(p >= 4.0)) throw std::domain_error("os_constant: p >= 4 required");
  return 4.0 * std::sqrt(2.0) * std::pow(p / 4.0 + 1.0, 1.0 / p) *
         (1.0 + p / std::log(p / 2.0));
}

double k_os(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("k_os: empty grid");
  double best = 0.0;
  for (double p : grid) {
    if (!(p >= 4.0)) throw std::invalid_argument("k_os: grid values must be >= 4");
    const double r = os_constant(p) * std::log(p) / p;
    if (r > best) best = r;
  }
  return best;
}

std::vector<double> default_k_os_grid() {
  constexpr int n = 2000;
  const double lo = 4.0, hi = 1e4;
  const double step = std::log(hi / lo) / (n - 1);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  g.front() = lo;  // exact endpoint; the sup is attained here
  g.back() = hi;
  return g;
}

double k_os() {
  static const double v = [] {
    const auto g = default_k_os_grid();
    return k_os(g);
  }();
  return v;
}

OsekowskiBound osekowski_bound(double p) {
  OsekowskiBound b;
  b.p = p;
  b.os_value = os_constant(p);
  b.linearized = k_os() * p / std::log(p);
  return b;
}

double khintchine_moment_bound(double p, double mu_max) {
  if (!(mu_max >= 0.0))
    throw std::invalid_argument("khintchine_moment_bound: mu_max >= 0 required");
  return os_constant(p) * mu_max;
}

double khintchine_moment_bound_linearized(double p, double mu_max) {
  if (!(mu_max >= 0.0))
    throw std::invalid_argument("khintchine_moment_bound: mu_max >= 0 required");
  if (!(p >= 4.0)) throw std::domain_error("khintchine_moment_bound: p >= 4 required");
  return k_os() * (p / std::log(p)) * mu_max;
}

}  // namespace martnorm
