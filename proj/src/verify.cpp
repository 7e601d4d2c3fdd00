#include "martnorm/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace martnorm {
namespace {

// 99% two-sided normal quantile, for the Wilson interval.
constexpr double kZ99 = 2.5758293035489004;

// Runs fn(begin, end) over [0, total) in fixed blocks handed out by an atomic
// counter.  Block boundaries do not depend on the thread count, and callers
// only ever write to disjoint slices of a preallocated array, so the output
// is identical for any number of threads.
void parallel_blocks(std::int64_t total, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || total < 512) {
    fn(0, total);
    return;
  }
  constexpr std::int64_t kBlock = 256;
  std::atomic<std::int64_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::int64_t begin = cursor.fetch_add(kBlock);
        if (begin >= total) return;
        fn(begin, std::min(total, begin + kBlock));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

MomentEstimate empirical_moment(const std::vector<double>& samples, double p) {
  if (samples.empty()) throw std::invalid_argument("empirical_moment: no samples");
  if (!(p >= 1.0)) throw std::invalid_argument("empirical_moment: p >= 1 required");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += std::pow(std::abs(s), p);
  mean /= n;
  double var = 0.0;
  for (double s : samples) {
    const double d = std::pow(std::abs(s), p) - mean;
    var += d * d;
  }
  var /= std::max(1.0, n - 1.0);
  MomentEstimate est;
  if (mean <= 0.0) return est;
  est.value = std::pow(mean, 1.0 / p);
  // derivative of m -> m^(1/p) at the sample mean
  est.stderr_ = (1.0 / p) * std::pow(mean, 1.0 / p - 1.0) * std::sqrt(var / n);
  return est;
}

TailEstimate empirical_tail(const std::vector<double>& samples, double t) {
  if (samples.empty()) throw std::invalid_argument("empirical_tail: no samples");
  const double n = static_cast<double>(samples.size());
  double hits = 0.0;
  for (double s : samples)
    if (s >= t) hits += 1.0;
  const double f = hits / n;
  TailEstimate est;
  est.frequency = f;
  est.stderr_ = std::sqrt(f * (1.0 - f) / n);
  const double z2 = kZ99 * kZ99;
  const double denom = 1.0 + z2 / n;
  const double center = (f + z2 / (2.0 * n)) / denom;
  const double half = kZ99 * std::sqrt(f * (1.0 - f) / n + z2 / (4.0 * n * n)) / denom;
  est.wilson_lo = std::max(0.0, center - half);
  est.wilson_hi = std::min(1.0, center + half);
  return est;
}

bool EmpiricalReport::all_pass() const { return failures() == 0; }

int EmpiricalReport::failures() const {
  int n = 0;
  for (const auto& row : moments)
    if (!row.pass) ++n;
  for (const auto& row : tails)
    if (!row.pass) ++n;
  return n;
}

std::vector<double> simulate_norm_samples(const MartingaleModel& model, const NormSpec& spec,
                                          std::int64_t paths, std::uint64_t seed, int threads) {
  if (paths < 1) throw std::invalid_argument("simulate_norm_samples: paths >= 1 required");
  if (spec.d != model.d)
    throw std::invalid_argument("simulate_norm_samples: norm dimension does not match model");
  std::vector<double> out(static_cast<std::size_t>(paths));
  const bool needs_sphere = !spec.finite_extremes() && spec.p != 2.0;
  const ExtremePointSet sphere =
      needs_sphere ? extreme_points(spec) : ExtremePointSet{spec, true, Eigen::MatrixXd(), 0, 0};
  parallel_blocks(paths, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t path = begin; path < end; ++path) {
      const Eigen::MatrixXd v = final_sum(model, seed, path);
      out[static_cast<std::size_t>(path)] =
          needs_sphere ? operator_norm(v, spec, sphere) : operator_norm(v, spec);
    }
  });
  return out;
}

EmpiricalReport bound_check_report(const MartingaleModel& model, const NormSpec& spec,
                                   const BoundProfile& profile, const TailCurve& curve,
                                   const VerifyOptions& options) {
  if (options.moment_paths < 1 || options.tail_paths < 0) {
    throw std::invalid_argument("bound_check_report: nonsensical path counts");
  }
  if (!(options.bound_scale > 0.0)) {
    throw std::invalid_argument("bound_check_report: bound_scale must be positive");
  }

  EmpiricalReport report;
  report.model = model.describe();
  report.norm = spec.describe();
  report.aggregation = profile.profile_label;
  report.moment_paths = options.moment_paths;
  report.tail_paths = options.tail_paths;
  report.seed = options.seed;
  report.horizon = static_cast<int>(profile.horizon);
  report.kappa = profile.kappa;
  report.c_z = profile.c_z;
  report.dependence_factor = dependence_moment_factor(model.dependence);
  report.bound_scale = options.bound_scale;

  const std::int64_t total = std::max(options.moment_paths, options.tail_paths);
  const std::vector<double> raw =
      simulate_norm_samples(model, spec, total, options.seed, std::max(1, options.threads));

  const bool heavy = model.law.kind == EntryLaw::Kind::pareto_sym;
  std::vector<double> moment_samples(raw.begin(),
                                     raw.begin() + static_cast<std::ptrdiff_t>(options.moment_paths));
  for (double p : options.moment_orders) {
    if (!(p < profile.p_plus)) continue;
    if (heavy && p > 8.0) continue;
    MomentRow row;
    row.p = p;
    const MomentEstimate est = empirical_moment(moment_samples, p);
    row.empirical = est.value;
    row.stderr_ = est.stderr_;
    row.bound = martingale_moment_bound(p, profile.horizon, profile) * options.bound_scale;
    row.margin = row.bound - row.empirical;
    row.pass = row.empirical - 3.0 * row.stderr_ <= row.bound;
    report.moments.push_back(row);
  }

  if (options.tail_paths > 0 && !curve.t.empty()) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(profile.horizon));
    std::vector<double> tail_samples(raw.begin(),
                                     raw.begin() + static_cast<std::ptrdiff_t>(options.tail_paths));
    for (double& s : tail_samples) s *= scale;
    std::sort(tail_samples.begin(), tail_samples.end());
    for (std::size_t k = 0; k < curve.t.size(); ++k) {
      TailRow row;
      row.t = curve.t[k];
      // sorted samples: frequency of >= t via binary search
      const auto it = std::lower_bound(tail_samples.begin(), tail_samples.end(), row.t);
      const double n = static_cast<double>(tail_samples.size());
      const double f = static_cast<double>(tail_samples.end() - it) / n;
      row.frequency = f;
      row.stderr_ = std::sqrt(f * (1.0 - f) / n);
      const double z2 = kZ99 * kZ99;
      const double denom = 1.0 + z2 / n;
      const double center = (f + z2 / (2.0 * n)) / denom;
      const double half = kZ99 * std::sqrt(f * (1.0 - f) / n + z2 / (4.0 * n * n)) / denom;
      row.wilson_lo = std::max(0.0, center - half);
      row.wilson_hi = std::min(1.0, center + half);
      row.bound = curve.bound[k] * options.bound_scale;
      row.margin = row.bound - row.frequency;
      row.pass = row.frequency - 3.0 * row.stderr_ <= row.bound;
      report.tails.push_back(row);
    }
  }
  return report;
}

std::string summary_line(const EmpiricalReport& report) {
  char buf[160];
  const int bad = report.failures();
  std::snprintf(buf, sizeof buf, "%s: %zu moment rows, %zu tail rows, %d failing (%s)",
                bad == 0 ? "PASS" : "FAIL", report.moments.size(), report.tails.size(), bad,
                report.model.c_str());
  return buf;
}

}  // namespace martnorm
