#pragma once

#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "martnorm/mart_sim.hpp"
#include "martnorm/normed_space.hpp"

namespace martnorm {

/// Invalid configuration: the CLI maps this to exit code 2.  Parse failures
/// carry the line and column of the offending byte.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KappaMode {
  bool estimated = false;
  // analytic: explicit value, or NaN to derive from the norm
  double value = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> eps_grid;  // empty -> default grid
  std::int64_t cloud_size = 10000;
};

struct ProfileSpec {
  // from_law | bounded | power_log | heavy_tail | tabulated
  std::string family = "from_law";
  double m = 1.0;                  // bounded
  double c = 1.0, delta = 1.0;     // power_log
  double b = 5.0, gamma = 0.0;     // heavy_tail
  std::vector<double> p_grid, values;  // tabulated
};

struct OutputSpec {
  std::string format = "csv";  // csv | json (json always adds the mirror)
  std::string path = "out";
  bool dump_paths = false;  // audit dump of raw differences (simulate only)
};

struct ExperimentConfig {
  MartingaleModel model;
  double norm_p = 2.0;  // norm dimension is the model's d
  KappaMode kappa_mode;
  ProfileSpec moment_profile;
  std::vector<double> p_grid;  // explicit override; empty -> profile default
  std::vector<double> t_grid;  // explicit override; empty -> default
  std::int64_t paths = 10000;
  std::int64_t tail_samples = 1000000;
  std::vector<double> moment_orders = {4.0, 6.0, 8.0};
  double bound_scale = 1.0;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 -> hardware concurrency
  OutputSpec output;
};

/// Parses and validates a config document.  Unknown keys anywhere are
/// rejected (with their JSON path); malformed JSON reports line and column.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

/// The config with every default materialized, so an echoed config plus the
/// seed fully describes a run.
nlohmann::ordered_json echo_config(const ExperimentConfig& config);

}  // namespace martnorm
