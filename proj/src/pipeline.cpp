#include "martnorm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

#include "martnorm/report_io.hpp"

namespace martnorm {
namespace {

constexpr double kE = 2.7182818284590452354;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<double> default_t_grid() {
  // 40 log-spaced thresholds from e (the bound's validity edge) to 10^3
  std::vector<double> t(40);
  const double lo = std::log(kE), hi = std::log(1e3);
  for (int i = 0; i < 40; ++i) t[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / 39.0);
  t.front() = kE;
  return t;
}

std::string file_path(const std::string& dir, const char* name) { return dir + "/" + name; }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("config error: cannot create output directory '" + dir + "'");
}

void write_echo(const ExperimentConfig& config, const std::string& out_dir) {
  write_text_file(file_path(out_dir, "config_echo.json"), echo_config(config).dump(2) + "\n");
}

NormSpec norm_from_config(const ExperimentConfig& config) {
  try {
    return NormSpec::lp(config.model.d, config.norm_p);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error at norm: ") + e.what());
  }
}

}  // namespace

MomentProfile entry_profile_from_config(const ExperimentConfig& config) {
  const ProfileSpec& spec = config.moment_profile;
  try {
    if (spec.family == "from_law") return law_profile(config.model.law);
    if (spec.family == "bounded") return MomentProfile::bounded(spec.m);
    if (spec.family == "power_log") return MomentProfile::power_log(spec.c, spec.delta);
    if (spec.family == "heavy_tail") return MomentProfile::heavy_tail(spec.b, spec.gamma);
    if (spec.family == "tabulated") return MomentProfile::tabulated(spec.p_grid, spec.values);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error at moment_profile: ") + e.what());
  }
  throw ConfigError("config error at moment_profile.family: unknown family '" + spec.family + "'");
}

double resolve_kappa(const ExperimentConfig& config, const NormSpec& spec) {
  if (!config.kappa_mode.estimated) {
    if (std::isnan(config.kappa_mode.value)) return analytic_kappa(spec);
    return config.kappa_mode.value;
  }
  try {
    const TensorExtremeSet z = dual_pairing_tensor_set(
        spec, kGeometrySeed, static_cast<int>(config.kappa_mode.cloud_size));
    const std::vector<double> grid =
        config.kappa_mode.eps_grid.empty() ? default_eps_grid() : config.kappa_mode.eps_grid;
    return estimate_kappa(z, grid, config.kappa_mode.cloud_size, kGeometrySeed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error at kappa_mode: ") + e.what());
  }
}

BoundArtifacts build_bounds(const ExperimentConfig& config) {
  BoundArtifacts art;
  art.spec = norm_from_config(config);
  art.kappa = resolve_kappa(config, art.spec);
  art.c_z = max_l1_on_sphere(dual(art.spec)) * max_l1_on_sphere(art.spec);
  art.dependence_factor = dependence_moment_factor(config.model.dependence);
  art.mu = entry_profile_from_config(config).scaled(art.c_z * art.dependence_factor);

  const FinitenessInterval fi = finiteness_interval(art.mu, art.kappa);
  if (fi.violated) {
    throw ConfigError(
        "moment finiteness condition violated: no p > max(kappa,4) with finite rho");
  }
  art.profile = make_bound_profile(art.mu, art.kappa, static_cast<double>(config.model.n));
  art.profile.c_z = art.c_z;

  std::vector<double> t_grid = config.t_grid.empty() ? default_t_grid() : config.t_grid;
  for (double t : t_grid) {
    if (!(t >= kE)) throw ConfigError("config error at t_grid: thresholds must be >= e");
  }
  const BoundProfile& profile = art.profile;
  const PsiFunction psi = PsiFunction::from_beta([profile](double p) { return profile.beta(p); },
                                                 1.0, profile.p_plus, "beta");
  art.curve = martingale_tail_curve(t_grid, psi);
  return art;
}

int run_bounds(const ExperimentConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  BoundArtifacts art = build_bounds(config);

  if (!config.p_grid.empty()) {
    // explicit p rows instead of the default internal grid
    BoundProfile table = art.profile;
    table.p_grid.clear();
    table.nu_values.clear();
    table.rho_values.clear();
    table.beta_values.clear();
    for (double p : config.p_grid) {
      if (!(p > art.profile.p_minus && p < art.profile.p_plus)) {
        throw ConfigError(
            "config error at p_grid: points must lie strictly inside the finiteness interval");
      }
      table.p_grid.push_back(p);
      table.nu_values.push_back(nu_osekowski(p, art.mu));
      table.rho_values.push_back(art.profile.rho_at(p));
      table.beta_values.push_back(art.profile.beta(p));
    }
    art.profile = std::move(table);
  }

  write_echo(config, out_dir);
  write_text_file(file_path(out_dir, "bound_profile.csv"), bound_profile_csv(art.profile));
  write_text_file(file_path(out_dir, "tail_curve.csv"), tail_curve_csv(art.curve));
  if (config.output.format == "json") {
    write_text_file(file_path(out_dir, "bound_profile.json"),
                    bound_profile_json(art.profile).dump(2) + "\n");
    write_text_file(file_path(out_dir, "tail_curve.json"),
                    tail_curve_json(art.curve).dump(2) + "\n");
  }
  std::printf("bounds: %zu p rows, %zu t rows, kappa=%s, c_z=%s, interval=(%s, %s)\n",
              art.profile.p_grid.size(), art.curve.t.size(), format_double(art.kappa).c_str(),
              format_double(art.c_z).c_str(), format_double(art.profile.p_minus).c_str(),
              format_double(art.profile.p_plus).c_str());
  return 0;
}

int run_entropy(const ExperimentConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  const NormSpec spec = norm_from_config(config);
  EntropyProfile profile;
  try {
    const TensorExtremeSet z = dual_pairing_tensor_set(
        spec, kGeometrySeed, static_cast<int>(config.kappa_mode.cloud_size));
    const std::vector<double> grid =
        config.kappa_mode.eps_grid.empty() ? default_eps_grid() : config.kappa_mode.eps_grid;
    profile = entropy_profile(z, grid, config.kappa_mode.cloud_size, kGeometrySeed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error at kappa_mode: ") + e.what());
  }
  write_echo(config, out_dir);
  write_text_file(file_path(out_dir, "entropy.csv"), entropy_csv(profile));
  if (config.output.format == "json") {
    write_text_file(file_path(out_dir, "entropy.json"), entropy_json(profile).dump(2) + "\n");
  }
  std::printf("entropy: %zu scales, slope=%s (analytic %s)\n", profile.eps.size(),
              format_double(profile.slope).c_str(),
              format_double(analytic_kappa(spec)).c_str());
  return 0;
}

int run_simulate(const ExperimentConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  const NormSpec spec = norm_from_config(config);
  const int threads = resolve_threads(config.threads);
  const std::int64_t total = std::max(config.paths, config.tail_samples);
  const std::vector<double> raw =
      simulate_norm_samples(config.model, spec, total, config.seed, threads);

  const std::vector<double> moment_samples(
      raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(config.paths));
  std::string moments = "p,empirical,stderr\n";
  for (double p : config.moment_orders) {
    const MomentEstimate est = empirical_moment(moment_samples, p);
    moments += format_double(p) + "," + format_double(est.value) + "," +
               format_double(est.stderr_) + "\n";
  }

  std::string tails = "t,frequency,wilson_lo,wilson_hi,stderr\n";
  if (config.tail_samples > 0) {
    std::vector<double> tail_samples(raw.begin(),
                                     raw.begin() + static_cast<std::ptrdiff_t>(config.tail_samples));
    const double scale = 1.0 / std::sqrt(static_cast<double>(config.model.n));
    for (double& s : tail_samples) s *= scale;
    const std::vector<double> t_grid = config.t_grid.empty() ? default_t_grid() : config.t_grid;
    for (double t : t_grid) {
      const TailEstimate est = empirical_tail(tail_samples, t);
      tails += format_double(t) + "," + format_double(est.frequency) + "," +
               format_double(est.wilson_lo) + "," + format_double(est.wilson_hi) + "," +
               format_double(est.stderr_) + "\n";
    }
  }

  write_echo(config, out_dir);
  write_text_file(file_path(out_dir, "raw_moments.csv"), moments);
  write_text_file(file_path(out_dir, "raw_tails.csv"), tails);

  if (config.output.dump_paths) {
    std::string dump = "path,step,i,j,xi\n";
    for (std::int64_t path = 0; path < config.paths; ++path) {
      const auto diffs = generate_differences(config.model, config.seed, path);
      for (std::size_t k = 0; k < diffs.size(); ++k) {
        for (int i = 0; i < config.model.d; ++i) {
          for (int j = 0; j < config.model.d; ++j) {
            dump += std::to_string(path) + "," + std::to_string(k) + "," + std::to_string(i) +
                    "," + std::to_string(j) + "," + format_double(diffs[k](i, j)) + "\n";
          }
        }
      }
    }
    write_text_file(file_path(out_dir, "paths.csv"), dump);
  }

  std::printf("simulate: %lld paths, %lld tail samples, %zu moment orders\n",
              static_cast<long long>(config.paths), static_cast<long long>(config.tail_samples),
              config.moment_orders.size());
  return 0;
}

int run_verify(const ExperimentConfig& config, const std::string& out_dir) {
  ensure_dir(out_dir);
  const BoundArtifacts art = build_bounds(config);

  VerifyOptions options;
  options.moment_paths = config.paths;
  options.tail_paths = config.tail_samples;
  options.moment_orders = config.moment_orders;
  options.threads = resolve_threads(config.threads);
  options.bound_scale = config.bound_scale;
  options.seed = config.seed;

  const EmpiricalReport report =
      bound_check_report(config.model, art.spec, art.profile, art.curve, options);

  write_echo(config, out_dir);
  write_text_file(file_path(out_dir, "moments.csv"), moment_rows_csv(report.moments));
  write_text_file(file_path(out_dir, "tails.csv"), tail_rows_csv(report.tails));
  write_text_file(file_path(out_dir, "report.csv"), report_csv(report));
  write_text_file(file_path(out_dir, "report.json"), report_json(report).dump(2) + "\n");

  std::printf("%s\n", summary_line(report).c_str());
  return report.all_pass() ? 0 : 1;
}

int run_report(const ExperimentConfig& /*config*/, const std::string& out_dir) {
  const std::string moments_path = file_path(out_dir, "moments.csv");
  const std::string tails_path = file_path(out_dir, "tails.csv");
  const bool have_moments = std::filesystem::exists(moments_path);
  const bool have_tails = std::filesystem::exists(tails_path);
  if (!have_moments && !have_tails) {
    throw ConfigError("config error: no moments.csv or tails.csv under '" + out_dir +
                      "' (run verify first)");
  }

  auto rows_of = [](const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (header) {
        header = false;
        continue;
      }
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(std::move(cells));
    }
    return rows;
  };

  std::string out = "section,x,empirical,stderr,bound,margin,verdict\n";
  std::size_t count = 0;
  if (have_moments) {
    for (const auto& r : rows_of(read_text_file(moments_path))) {
      if (r.size() != 6) throw ConfigError("config error: malformed row in moments.csv");
      out += "moment," + r[0] + "," + r[1] + "," + r[2] + "," + r[3] + "," + r[4] + "," + r[5] + "\n";
      ++count;
    }
  }
  if (have_tails) {
    for (const auto& r : rows_of(read_text_file(tails_path))) {
      if (r.size() != 8) throw ConfigError("config error: malformed row in tails.csv");
      out += "tail," + r[0] + "," + r[1] + "," + r[4] + "," + r[5] + "," + r[6] + "," + r[7] + "\n";
      ++count;
    }
  }
  write_text_file(file_path(out_dir, "report.csv"), out);
  std::printf("report: %zu rows merged\n", count);
  return 0;
}

}  // namespace martnorm
