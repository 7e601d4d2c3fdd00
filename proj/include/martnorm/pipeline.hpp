#pragma once

#include <string>

#include "martnorm/config.hpp"
#include "martnorm/entropy.hpp"
#include "martnorm/moment_bounds.hpp"
#include "martnorm/verify.hpp"

namespace martnorm {

/// Everything the bound side of a run resolves to.
struct BoundArtifacts {
  NormSpec spec;
  double kappa = 0.0;
  double c_z = 1.0;
  double dependence_factor = 1.0;
  MomentProfile mu;  // effective envelope: c_Z * dependence factor * entry profile
  BoundProfile profile;
  TailCurve curve;
};

/// The per-entry moment envelope selected by the config (before aggregation).
MomentProfile entry_profile_from_config(const ExperimentConfig& config);

/// Entropy exponent: analytic (explicit or derived from the norm) or fitted
/// from a sampled dual-pairing cloud, per the config's kappa_mode.
double resolve_kappa(const ExperimentConfig& config, const NormSpec& spec);

/// Builds profile + tail curve for the config.  Throws ConfigError when the
/// finiteness interval is empty (no usable p beyond max(kappa, 4)).
BoundArtifacts build_bounds(const ExperimentConfig& config);

// Subcommand bodies.  Each writes its report files under out_dir, prints a
// one-line summary, and returns the process exit code (0 ok, 1 verification
// failure).  Invalid configuration surfaces as ConfigError (exit 2 upstream).
int run_bounds(const ExperimentConfig& config, const std::string& out_dir);
int run_entropy(const ExperimentConfig& config, const std::string& out_dir);
int run_simulate(const ExperimentConfig& config, const std::string& out_dir);
int run_verify(const ExperimentConfig& config, const std::string& out_dir);
int run_report(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace martnorm
