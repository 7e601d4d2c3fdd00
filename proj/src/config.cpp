#include "martnorm/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace martnorm {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config error: " + message); }

[[noreturn]] void fail_at(const std::string& path, const std::string& message) {
  throw ConfigError("config error at " + path + ": " + message);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail_at(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail_at(path + "." + item.key(), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) fail_at(path + "." + key, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& path, const char* key,
                         std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail_at(path + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) fail_at(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) fail_at(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::vector<double> get_number_list(const json& obj, const std::string& path, const char* key,
                                    std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array()) fail_at(path + "." + key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail_at(path + "." + key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

EntryLaw parse_law(const json& obj, const std::string& path) {
  check_keys(obj, path, {"family", "sigma", "delta", "b", "gamma"});
  const std::string family = get_string(obj, path, "family", "rademacher");
  try {
    if (family == "rademacher") return EntryLaw::rademacher();
    if (family == "gaussian") return EntryLaw::gaussian(get_number(obj, path, "sigma", 1.0));
    if (family == "weibull_sym") return EntryLaw::weibull_sym(get_number(obj, path, "delta", 1.0));
    if (family == "pareto_sym") {
      return EntryLaw::pareto_sym(get_number(obj, path, "b", 5.0),
                                  get_number(obj, path, "gamma", 0.0));
    }
  } catch (const std::invalid_argument& e) {
    fail_at(path, e.what());
  }
  fail_at(path + ".family", "unknown entry law '" + family + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into a line/column anchor
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    byte = std::min(byte, text.size());
    std::size_t line = 1, last_newline = 0;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        last_newline = i + 1;
      }
    }
    std::ostringstream message;
    message << "config parse error at line " << line << ", column " << (byte - last_newline + 1)
            << ": " << e.what();
    throw ConfigError(message.str());
  }

  check_keys(root, "config",
             {"model", "norm", "kappa_mode", "moment_profile", "p_grid", "t_grid", "paths",
              "tail_samples", "moment_orders", "bound_scale", "seed", "threads", "output"});

  ExperimentConfig config;

  if (root.contains("model")) {
    const auto& m = root.at("model");
    check_keys(m, "model", {"d", "n", "law", "dependence"});
    config.model.d = static_cast<int>(get_integer(m, "model", "d", 1));
    config.model.n = static_cast<int>(get_integer(m, "model", "n", 1));
    if (config.model.d < 1) fail_at("model.d", "must be >= 1");
    if (config.model.n < 1) fail_at("model.n", "must be >= 1");
    if (m.contains("law")) config.model.law = parse_law(m.at("law"), "model.law");
    const std::string dep = get_string(m, "model", "dependence", "independent");
    if (dep == "independent") {
      config.model.dependence = Dependence::independent;
    } else if (dep == "sign_modulated") {
      config.model.dependence = Dependence::sign_modulated;
    } else {
      fail_at("model.dependence", "must be 'independent' or 'sign_modulated'");
    }
  }

  if (root.contains("norm")) {
    const auto& n = root.at("norm");
    check_keys(n, "norm", {"p", "d"});
    config.norm_p = get_number(n, "norm", "p", 2.0);
    if (!(config.norm_p >= 1.0)) fail_at("norm.p", "must be >= 1 (or \"inf\")");
    const std::int64_t d = get_integer(n, "norm", "d", config.model.d);
    if (d != config.model.d) fail_at("norm.d", "must match model.d");
  }

  if (root.contains("kappa_mode")) {
    const auto& k = root.at("kappa_mode");
    check_keys(k, "kappa_mode", {"mode", "value", "eps_grid", "cloud_size"});
    const std::string mode = get_string(k, "kappa_mode", "mode", "analytic");
    if (mode == "analytic") {
      config.kappa_mode.estimated = false;
      config.kappa_mode.value =
          get_number(k, "kappa_mode", "value", std::numeric_limits<double>::quiet_NaN());
      if (k.contains("value") && !(config.kappa_mode.value >= 0.0)) {
        fail_at("kappa_mode.value", "must be >= 0");
      }
      if (k.contains("eps_grid") || k.contains("cloud_size")) {
        fail_at("kappa_mode", "eps_grid/cloud_size only apply to mode 'estimated'");
      }
    } else if (mode == "estimated") {
      config.kappa_mode.estimated = true;
      config.kappa_mode.eps_grid = get_number_list(k, "kappa_mode", "eps_grid", {});
      config.kappa_mode.cloud_size = get_integer(k, "kappa_mode", "cloud_size", 10000);
      if (config.kappa_mode.cloud_size < 2) fail_at("kappa_mode.cloud_size", "must be >= 2");
      if (k.contains("value")) fail_at("kappa_mode.value", "only applies to mode 'analytic'");
    } else {
      fail_at("kappa_mode.mode", "must be 'analytic' or 'estimated'");
    }
  }

  if (root.contains("moment_profile")) {
    const auto& p = root.at("moment_profile");
    check_keys(p, "moment_profile", {"family", "m", "c", "delta", "b", "gamma", "p_grid", "values"});
    auto& spec = config.moment_profile;
    spec.family = get_string(p, "moment_profile", "family", "from_law");
    spec.m = get_number(p, "moment_profile", "m", 1.0);
    spec.c = get_number(p, "moment_profile", "c", 1.0);
    spec.delta = get_number(p, "moment_profile", "delta", 1.0);
    spec.b = get_number(p, "moment_profile", "b", 5.0);
    spec.gamma = get_number(p, "moment_profile", "gamma", 0.0);
    spec.p_grid = get_number_list(p, "moment_profile", "p_grid", {});
    spec.values = get_number_list(p, "moment_profile", "values", {});
    if (spec.family != "from_law" && spec.family != "bounded" && spec.family != "power_log" &&
        spec.family != "heavy_tail" && spec.family != "tabulated") {
      fail_at("moment_profile.family", "unknown family '" + spec.family + "'");
    }
    if (spec.family == "tabulated" && (spec.p_grid.empty() || spec.values.empty())) {
      fail_at("moment_profile", "tabulated profile needs p_grid and values");
    }
  }

  config.p_grid = get_number_list(root, "config", "p_grid", {});
  config.t_grid = get_number_list(root, "config", "t_grid", {});
  config.paths = get_integer(root, "config", "paths", config.paths);
  if (config.paths < 1) fail_at("paths", "must be >= 1");
  config.tail_samples = get_integer(root, "config", "tail_samples", config.tail_samples);
  if (config.tail_samples < 0) fail_at("tail_samples", "must be >= 0");
  config.moment_orders = get_number_list(root, "config", "moment_orders", config.moment_orders);
  for (double p : config.moment_orders) {
    if (!(p >= 1.0)) fail_at("moment_orders", "every order must be >= 1");
  }
  config.bound_scale = get_number(root, "config", "bound_scale", 1.0);
  if (!(config.bound_scale > 0.0)) fail_at("bound_scale", "must be > 0");
  if (root.contains("seed")) {
    const auto& s = root.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) fail_at("seed", "expected an integer");
    config.seed = s.get<std::uint64_t>();
  }
  config.threads = static_cast<int>(get_integer(root, "config", "threads", 0));
  if (config.threads < 0) fail_at("threads", "must be >= 0 (0 = hardware)");

  if (root.contains("output")) {
    const auto& o = root.at("output");
    check_keys(o, "output", {"format", "path", "dump_paths"});
    config.output.format = get_string(o, "output", "format", "csv");
    if (config.output.format != "csv" && config.output.format != "json") {
      fail_at("output.format", "must be 'csv' or 'json'");
    }
    config.output.path = get_string(o, "output", "path", "out");
    config.output.dump_paths = get_bool(o, "output", "dump_paths", false);
  }

  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json echo_config(const ExperimentConfig& config) {
  json law;
  switch (config.model.law.kind) {
    case EntryLaw::Kind::rademacher:
      law = json{{"family", "rademacher"}};
      break;
    case EntryLaw::Kind::gaussian:
      law = json{{"family", "gaussian"}, {"sigma", config.model.law.sigma}};
      break;
    case EntryLaw::Kind::weibull_sym:
      law = json{{"family", "weibull_sym"}, {"delta", config.model.law.delta}};
      break;
    case EntryLaw::Kind::pareto_sym:
      law = json{{"family", "pareto_sym"}, {"b", config.model.law.b}, {"gamma", config.model.law.gamma}};
      break;
  }

  json kappa;
  if (config.kappa_mode.estimated) {
    kappa = json{{"mode", "estimated"},
                 {"eps_grid", config.kappa_mode.eps_grid},
                 {"cloud_size", config.kappa_mode.cloud_size}};
  } else if (std::isnan(config.kappa_mode.value)) {
    kappa = json{{"mode", "analytic"}};
  } else {
    kappa = json{{"mode", "analytic"}, {"value", config.kappa_mode.value}};
  }

  json profile{{"family", config.moment_profile.family}};
  if (config.moment_profile.family == "bounded") profile["m"] = config.moment_profile.m;
  if (config.moment_profile.family == "power_log") {
    profile["c"] = config.moment_profile.c;
    profile["delta"] = config.moment_profile.delta;
  }
  if (config.moment_profile.family == "heavy_tail") {
    profile["b"] = config.moment_profile.b;
    profile["gamma"] = config.moment_profile.gamma;
  }
  if (config.moment_profile.family == "tabulated") {
    profile["p_grid"] = config.moment_profile.p_grid;
    profile["values"] = config.moment_profile.values;
  }

  json j;
  j["model"] = json{{"d", config.model.d},
                    {"n", config.model.n},
                    {"law", law},
                    {"dependence", config.model.dependence == Dependence::sign_modulated
                                       ? "sign_modulated"
                                       : "independent"}};
  j["norm"] = json{{"d", config.model.d},
                   {"p", std::isinf(config.norm_p) ? json("inf") : json(config.norm_p)}};
  j["kappa_mode"] = std::move(kappa);
  j["moment_profile"] = std::move(profile);
  j["p_grid"] = config.p_grid;
  j["t_grid"] = config.t_grid;
  j["paths"] = config.paths;
  j["tail_samples"] = config.tail_samples;
  j["moment_orders"] = config.moment_orders;
  j["bound_scale"] = config.bound_scale;
  j["seed"] = config.seed;
  j["threads"] = config.threads;
  j["output"] = json{{"format", config.output.format},
                     {"path", config.output.path},
                     {"dump_paths", config.output.dump_paths}};
  return j;
}

}  // namespace martnorm
