#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "martnorm/gls.hpp"
#include "martnorm/mart_sim.hpp"
#include "martnorm/moment_bounds.hpp"
#include "martnorm/normed_space.hpp"

namespace martnorm {

struct MomentEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // delta method through x -> x^(1/p)
};

/// (mean |s|^p)^(1/p) with its standard error.
MomentEstimate empirical_moment(const std::vector<double>& samples, double p);

struct TailEstimate {
  double frequency = 0.0;
  double wilson_lo = 0.0;  // 99% Wilson interval
  double wilson_hi = 0.0;
  double stderr_ = 0.0;
};

/// Fraction of samples >= t with binomial error bars.
TailEstimate empirical_tail(const std::vector<double>& samples, double t);

struct MomentRow {
  double p = 0, empirical = 0, stderr_ = 0, bound = 0, margin = 0;
  bool pass = false;
};

struct TailRow {
  double t = 0, frequency = 0, wilson_lo = 0, wilson_hi = 0, stderr_ = 0, bound = 0, margin = 0;
  bool pass = false;
};

struct EmpiricalReport {
  std::string model;
  std::string norm;
  std::string aggregation;  // how the entry-moment envelope was assembled
  std::int64_t moment_paths = 0;
  std::int64_t tail_paths = 0;
  std::uint64_t seed = 0;
  int horizon = 1;
  double kappa = 0.0;
  double c_z = 1.0;
  double dependence_factor = 1.0;
  double bound_scale = 1.0;
  std::vector<MomentRow> moments;
  std::vector<TailRow> tails;

  bool all_pass() const;
  int failures() const;
};

/// ||V(n)|| for paths 0..paths-1, in path order regardless of thread count:
/// each entry is a pure function of (seed, path), and the reduction over
/// paths happens serially afterwards, so reports are byte-identical runs.
std::vector<double> simulate_norm_samples(const MartingaleModel& model, const NormSpec& spec,
                                          std::int64_t paths, std::uint64_t seed, int threads = 1);

struct VerifyOptions {
  std::int64_t moment_paths = 10000;
  std::int64_t tail_paths = 1000000;
  std::vector<double> moment_orders = {4.0, 6.0, 8.0};
  int threads = 1;
  double bound_scale = 1.0;  // multiplies every bound before comparison
  std::uint64_t seed = 1;
};

/// Simulates the model, measures ||V(n)|| moments and tails of n^{-1/2}||V(n)||,
/// and compares them row by row against sqrt(n) * beta(p) and the tail curve.
/// A row passes when empirical - 3 * stderr <= bound.  Moment orders at or
/// beyond the finiteness endpoint are dropped, as are orders above 8 for
/// heavy-tailed entry laws (their sample moments do not stabilize at any
/// affordable path count).
EmpiricalReport bound_check_report(const MartingaleModel& model, const NormSpec& spec,
                                   const BoundProfile& profile, const TailCurve& curve,
                                   const VerifyOptions& options = {});

std::string summary_line(const EmpiricalReport& report);

}  // namespace martnorm
