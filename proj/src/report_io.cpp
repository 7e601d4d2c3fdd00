#include "martnorm/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace martnorm {
namespace {

using json = nlohmann::ordered_json;

// JSON has no infinity literal; encode non-finite values as strings so the
// documents stay valid and round-trip losslessly.
json jnum(double x) {
  if (std::isfinite(x)) return json(x);
  if (std::isnan(x)) return json("nan");
  return json(x > 0 ? "inf" : "-inf");
}

double jget(const json& v) {
  if (v.is_number()) return v.get<double>();
  const std::string s = v.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("report_from_json: unrecognized numeric value '" + s + "'");
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string bound_profile_csv(const BoundProfile& profile) {
  std::string out = "p,nu,rho,beta\n";
  for (std::size_t k = 0; k < profile.p_grid.size(); ++k) {
    out += format_double(profile.p_grid[k]);
    out += ',';
    out += format_double(profile.nu_values[k]);
    out += ',';
    out += format_double(profile.rho_values[k]);
    out += ',';
    out += format_double(profile.beta_values[k]);
    out += '\n';
  }
  return out;
}

std::string tail_curve_csv(const TailCurve& curve) {
  std::string out = "t,bound,provenance\n";
  for (std::size_t k = 0; k < curve.t.size(); ++k) {
    out += format_double(curve.t[k]);
    out += ',';
    out += format_double(curve.bound[k]);
    out += ',';
    out += curve.provenance;
    out += '\n';
  }
  return out;
}

std::string entropy_csv(const EntropyProfile& profile) {
  std::string out = "eps,entropy\n";
  for (std::size_t k = 0; k < profile.eps.size(); ++k) {
    out += format_double(profile.eps[k]);
    out += ',';
    out += format_double(profile.entropy[k]);
    out += '\n';
  }
  return out;
}

std::string moment_rows_csv(const std::vector<MomentRow>& rows) {
  std::string out = "p,empirical,stderr,bound,margin,verdict\n";
  for (const auto& r : rows) {
    out += format_double(r.p);
    out += ',';
    out += format_double(r.empirical);
    out += ',';
    out += format_double(r.stderr_);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += format_double(r.margin);
    out += ',';
    out += verdict(r.pass);
    out += '\n';
  }
  return out;
}

std::string tail_rows_csv(const std::vector<TailRow>& rows) {
  std::string out = "t,frequency,wilson_lo,wilson_hi,stderr,bound,margin,verdict\n";
  for (const auto& r : rows) {
    out += format_double(r.t);
    out += ',';
    out += format_double(r.frequency);
    out += ',';
    out += format_double(r.wilson_lo);
    out += ',';
    out += format_double(r.wilson_hi);
    out += ',';
    out += format_double(r.stderr_);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += format_double(r.margin);
    out += ',';
    out += verdict(r.pass);
    out += '\n';
  }
  return out;
}

std::string report_csv(const EmpiricalReport& report) {
  std::string out = "section,x,empirical,stderr,bound,margin,verdict\n";
  for (const auto& r : report.moments) {
    out += "moment,";
    out += format_double(r.p);
    out += ',';
    out += format_double(r.empirical);
    out += ',';
    out += format_double(r.stderr_);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += format_double(r.margin);
    out += ',';
    out += verdict(r.pass);
    out += '\n';
  }
  for (const auto& r : report.tails) {
    out += "tail,";
    out += format_double(r.t);
    out += ',';
    out += format_double(r.frequency);
    out += ',';
    out += format_double(r.stderr_);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += format_double(r.margin);
    out += ',';
    out += verdict(r.pass);
    out += '\n';
  }
  return out;
}

json bound_profile_json(const BoundProfile& profile) {
  json j;
  j["label"] = profile.profile_label;
  j["kappa"] = jnum(profile.kappa);
  j["horizon"] = profile.horizon;
  j["c_z"] = jnum(profile.c_z);
  j["p_minus"] = jnum(profile.p_minus);
  j["p_plus"] = jnum(profile.p_plus);
  j["violated"] = profile.violated;
  j["rho_min"] = jnum(profile.rho_min);
  j["provenance"] = json{{"nu", "k_os * (p / ln p) * mu_bar(p)"},
                         {"rho", "nu(p) * (10p - kappa) / (p - kappa)"},
                         {"beta", "rho(p) above p_minus, inf rho below"}};
  json rows = json::array();
  for (std::size_t k = 0; k < profile.p_grid.size(); ++k) {
    rows.push_back(json{{"p", jnum(profile.p_grid[k])},
                        {"nu", jnum(profile.nu_values[k])},
                        {"rho", jnum(profile.rho_values[k])},
                        {"beta", jnum(profile.beta_values[k])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

json tail_curve_json(const TailCurve& curve) {
  json j;
  j["provenance"] = curve.provenance;
  j["k"] = jnum(curve.k);
  json rows = json::array();
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    rows.push_back(json{{"t", jnum(curve.t[i])}, {"bound", jnum(curve.bound[i])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

json entropy_json(const EntropyProfile& profile) {
  json j;
  j["intercept"] = jnum(profile.intercept);
  j["slope"] = jnum(profile.slope);
  json rows = json::array();
  for (std::size_t k = 0; k < profile.eps.size(); ++k) {
    rows.push_back(json{{"eps", jnum(profile.eps[k])},
                        {"count", profile.counts[k]},
                        {"entropy", jnum(profile.entropy[k])},
                        {"used", static_cast<bool>(profile.used[k])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

json report_json(const EmpiricalReport& report) {
  json j;
  j["model"] = report.model;
  j["norm"] = report.norm;
  j["aggregation"] = report.aggregation;
  j["moment_paths"] = report.moment_paths;
  j["tail_paths"] = report.tail_paths;
  j["seed"] = report.seed;
  j["horizon"] = report.horizon;
  j["kappa"] = jnum(report.kappa);
  j["c_z"] = jnum(report.c_z);
  j["dependence_factor"] = jnum(report.dependence_factor);
  j["bound_scale"] = jnum(report.bound_scale);
  j["provenance"] = json{{"moment_bound", "sqrt(n) * beta(p)"},
                         {"tail_bound", "exp(-h_conj[beta](ln t)) at t = threshold grid"}};
  json moments = json::array();
  for (const auto& r : report.moments) {
    moments.push_back(json{{"p", jnum(r.p)},
                           {"empirical", jnum(r.empirical)},
                           {"stderr", jnum(r.stderr_)},
                           {"bound", jnum(r.bound)},
                           {"margin", jnum(r.margin)},
                           {"verdict", verdict(r.pass)}});
  }
  j["moments"] = std::move(moments);
  json tails = json::array();
  for (const auto& r : report.tails) {
    tails.push_back(json{{"t", jnum(r.t)},
                         {"frequency", jnum(r.frequency)},
                         {"wilson_lo", jnum(r.wilson_lo)},
                         {"wilson_hi", jnum(r.wilson_hi)},
                         {"stderr", jnum(r.stderr_)},
                         {"bound", jnum(r.bound)},
                         {"margin", jnum(r.margin)},
                         {"verdict", verdict(r.pass)}});
  }
  j["tails"] = std::move(tails);
  j["all_pass"] = report.all_pass();
  return j;
}

EmpiricalReport report_from_json(const json& j) {
  EmpiricalReport report;
  report.model = j.at("model").get<std::string>();
  report.norm = j.at("norm").get<std::string>();
  report.aggregation = j.at("aggregation").get<std::string>();
  report.moment_paths = j.at("moment_paths").get<std::int64_t>();
  report.tail_paths = j.at("tail_paths").get<std::int64_t>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.horizon = j.at("horizon").get<int>();
  report.kappa = jget(j.at("kappa"));
  report.c_z = jget(j.at("c_z"));
  report.dependence_factor = jget(j.at("dependence_factor"));
  report.bound_scale = jget(j.at("bound_scale"));
  for (const auto& r : j.at("moments")) {
    MomentRow row;
    row.p = jget(r.at("p"));
    row.empirical = jget(r.at("empirical"));
    row.stderr_ = jget(r.at("stderr"));
    row.bound = jget(r.at("bound"));
    row.margin = jget(r.at("margin"));
    row.pass = r.at("verdict").get<std::string>() == "PASS";
    report.moments.push_back(row);
  }
  for (const auto& r : j.at("tails")) {
    TailRow row;
    row.t = jget(r.at("t"));
    row.frequency = jget(r.at("frequency"));
    row.wilson_lo = jget(r.at("wilson_lo"));
    row.wilson_hi = jget(r.at("wilson_hi"));
    row.stderr_ = jget(r.at("stderr"));
    row.bound = jget(r.at("bound"));
    row.margin = jget(r.at("margin"));
    row.pass = r.at("verdict").get<std::string>() == "PASS";
    report.tails.push_back(row);
  }
  return report;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace martnorm
