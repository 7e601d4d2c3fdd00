#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "martnorm/moment_bounds.hpp"
#include "martnorm/rng.hpp"

namespace martnorm {

/// Symmetric scalar laws for martingale-difference entries.
struct EntryLaw {
  enum class Kind { rademacher, gaussian, weibull_sym, pareto_sym };

  Kind kind = Kind::rademacher;
  double sigma = 1.0;  // gaussian
  double delta = 1.0;  // weibull_sym: sign * E^delta, E standard exponential
  double b = 5.0;      // pareto_sym tail exponent
  double gamma = 0.0;  // pareto_sym logarithmic correction

  static EntryLaw rademacher();
  static EntryLaw gaussian(double sigma = 1.0);
  /// Tail exp(-t^(1/delta)), moments Gamma(delta*p + 1)^(1/p) ~ p^delta.
  static EntryLaw weibull_sym(double delta);
  /// |xi| has tail t^(-b) (ln t)^gamma for t >= e and a uniform core below e;
  /// requires b > 1 and gamma <= b (so the tail is nonincreasing from e on).
  static EntryLaw pareto_sym(double b, double gamma = 0.0);

  std::string describe() const;
};

enum class Dependence { independent, sign_modulated };

/// A d x d matrix martingale over n steps.  In the sign_modulated mode the
/// k-th difference is epsilon_k(i,j) * g(V_{k-1}(0,0)) with g(v) = 1 + tanh v
/// in (0, 2): genuinely dependent on the past, still conditionally centered,
/// and all entry moments survive up to a factor of 2.
struct MartingaleModel {
  int d = 1;
  int n = 1;
  EntryLaw law = EntryLaw::rademacher();
  Dependence dependence = Dependence::independent;

  std::string describe() const;
};

/// One draw from the law on an explicit stream.
double sample_entry(const EntryLaw& law, CounterRng& rng);

/// Exact p-th moment norm |xi|_p of the law (+infinity for pareto at p >= b).
double law_moment(const EntryLaw& law, double p);

/// Exact tail P(|xi| >= t) of the law.
double law_tail(const EntryLaw& law, double t);

/// The law's moment function as a profile (finiteness endpoint included).
MomentProfile law_profile(const EntryLaw& law);

/// Factor by which the dependence mode can inflate entry moment norms: 2 for
/// sign_modulated (|g| < 2), 1 otherwise.
double dependence_moment_factor(Dependence dep);

/// The n differences of one path.  Entry (i,j) of step k draws from the
/// stream keyed by (seed, path, k, i*d + j), so any path of any step is
/// reproducible in isolation and path generation parallelizes without
/// communication.
std::vector<Eigen::MatrixXd> generate_differences(const MartingaleModel& model,
                                                  std::uint64_t seed, std::int64_t path = 0);

struct MartingalePath {
  std::vector<Eigen::MatrixXd> differences;    // xi(1..n)
  std::vector<Eigen::MatrixXd> partial_sums;   // V(0) = 0, ..., V(n)
  std::uint64_t seed = 0;
};

/// Prefix sums V(k) of a difference sequence; validates matching dimensions.
MartingalePath assemble_martingale(std::vector<Eigen::MatrixXd> differences,
                                   std::uint64_t seed = 0);

/// Final sum V(n) alone, without materializing the sequence; identical to
/// assemble_martingale(generate_differences(...)).partial_sums.back().
Eigen::MatrixXd final_sum(const MartingaleModel& model, std::uint64_t seed, std::int64_t path);

/// sum_i b(i) xi(i) for a one-dimensional path; b must be a Euclidean unit
/// vector of length n (within 1e-12).
double khintchine_sum(const MartingalePath& path, const Eigen::VectorXd& b);

}  // namespace martnorm
