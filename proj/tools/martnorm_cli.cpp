// Command-line harness: computes operator-norm moment/tail bounds for matrix
// martingales, runs the matching Monte Carlo, and emits CSV/JSON reports.
//
// Exit codes: 0 success, 1 verification verdict failure, 2 invalid usage or
// configuration.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "martnorm/config.hpp"
#include "martnorm/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* config = cmd->add_option("--config", args.config_path, "JSON experiment config");
  if (config_required) config->required();
  cmd->add_option("--out", args.out_dir, "output directory (default: config output.path)");
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker threads (0 = hardware; affects speed only)");
}

martnorm::ExperimentConfig resolve(const CommonArgs& args) {
  martnorm::ExperimentConfig config;
  if (!args.config_path.empty()) config = martnorm::load_config_file(args.config_path);
  if (args.seed_set) config.seed = args.seed;
  if (args.threads >= 0) config.threads = args.threads;
  if (!args.out_dir.empty()) config.output.path = args.out_dir;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-norm bounds for matrix martingales, with Monte Carlo verification"};
  app.require_subcommand(1);

  CommonArgs bounds_args, entropy_args, simulate_args, verify_args, report_args;
  auto* bounds = app.add_subcommand("bounds", "emit the moment bound profile and tail curve");
  add_common(bounds, bounds_args, true);
  auto* entropy = app.add_subcommand("entropy", "emit the covering-entropy profile of the norm's extreme set");
  add_common(entropy, entropy_args, true);
  auto* simulate = app.add_subcommand("simulate", "emit raw empirical moments and tails");
  add_common(simulate, simulate_args, true);
  auto* verify = app.add_subcommand("verify", "simulate and check every bound row (exit 1 on FAIL)");
  add_common(verify, verify_args, true);
  auto* report = app.add_subcommand("report", "merge prior outputs into one plotting table");
  add_common(report, report_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds->parsed()) {
      const auto config = resolve(bounds_args);
      return martnorm::run_bounds(config, config.output.path);
    }
    if (entropy->parsed()) {
      const auto config = resolve(entropy_args);
      return martnorm::run_entropy(config, config.output.path);
    }
    if (simulate->parsed()) {
      const auto config = resolve(simulate_args);
      return martnorm::run_simulate(config, config.output.path);
    }
    if (verify->parsed()) {
      const auto config = resolve(verify_args);
      return martnorm::run_verify(config, config.output.path);
    }
    if (report->parsed()) {
      const auto config = resolve(report_args);
      return martnorm::run_report(config, config.output.path);
    }
  } catch (const martnorm::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
