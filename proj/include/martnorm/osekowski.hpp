#pragma once

#include <span>
#include <vector>

namespace martnorm {

// Os(p) = 4*sqrt(2) * (p/4 + 1)^{1/p} * (1 + p/ln(p/2)) for p >= 4.
// Universal constant in the moment bound for weighted sums of martingale
// differences: |sum_i b(i) xi(i)|_p <= Os(p) * max_l |xi(l)|_p for any unit
// l2 weight vector b, uniformly in the number of terms.
double os_constant(double p);

// sup over the grid of Os(p) / (p / ln p).  The ratio peaks at p = 4 and
// decays monotonically toward 4*sqrt(2), so a bracket starting exactly at 4
// captures the supremum.
double k_os(std::span<const double> grid);

// 2000 log-spaced points on [4, 1e4]; first point is exactly 4.
std::vector<double> default_k_os_grid();

// Cached sup over the default grid (~15.7858).
double k_os();

struct OsekowskiBound {
  double p = 0;           // moment order
  double os_value = 0;    // Os(p)
  double linearized = 0;  // k_os() * p / ln p  (>= Os(p) by construction)
};

OsekowskiBound osekowski_bound(double p);

// Os(p) * mu_max: bound on |sum_i b(i) xi(i)|_p when every difference has
// p-th moment at most mu_max and ||b||_2 = 1.
double khintchine_moment_bound(double p, double mu_max);

// k_os() * (p / ln p) * mu_max: the linearized-in-p version of the same
// bound, convenient inside the moment chain.
double khintchine_moment_bound_linearized(double p, double mu_max);

}  // namespace martnorm
