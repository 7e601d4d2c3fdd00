#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>

#include "martnorm/config.hpp"
#include "martnorm/report_io.hpp"

using namespace martnorm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& message, const std::string& needle) {
  return message.find(needle) != std::string::npos;
}

const char* kRichConfig = R"({
  "model": {"d": 3, "n": 50, "law": {"family": "pareto_sym", "b": 6.0, "gamma": 1.5},
            "dependence": "sign_modulated"},
  "norm": {"p": "inf", "d": 3},
  "kappa_mode": {"mode": "estimated", "eps_grid": [0.05, 0.1, 0.2], "cloud_size": 500},
  "moment_profile": {"family": "heavy_tail", "b": 6.0, "gamma": 1.5},
  "p_grid": [4.5, 5.0, 5.5],
  "t_grid": [3.0, 10.0, 30.0],
  "paths": 2000,
  "tail_samples": 50000,
  "moment_orders": [4.0, 5.0],
  "bound_scale": 0.5,
  "seed": 42,
  "threads": 2,
  "output": {"format": "json", "path": "run7", "dump_paths": true}
})";

}  // namespace

TEST_CASE("empty config materializes every default") {
  const ExperimentConfig c = parse_config("{}");
  CHECK(c.model.d == 1);
  CHECK(c.model.n == 1);
  CHECK(c.model.law.kind == EntryLaw::Kind::rademacher);
  CHECK(c.model.dependence == Dependence::independent);
  CHECK(c.norm_p == 2.0);
  CHECK_FALSE(c.kappa_mode.estimated);
  CHECK(std::isnan(c.kappa_mode.value));
  CHECK(c.kappa_mode.eps_grid.empty());
  CHECK(c.moment_profile.family == "from_law");
  CHECK(c.p_grid.empty());
  CHECK(c.t_grid.empty());
  CHECK(c.paths == 10000);
  CHECK(c.tail_samples == 1000000);
  CHECK(c.moment_orders == std::vector<double>{4.0, 6.0, 8.0});
  CHECK(c.bound_scale == 1.0);
  CHECK(c.seed == 1);
  CHECK(c.threads == 0);
  CHECK(c.output.format == "csv");
  CHECK(c.output.path == "out");
  CHECK_FALSE(c.output.dump_paths);
}

TEST_CASE("rich config parses field by field") {
  const ExperimentConfig c = parse_config(kRichConfig);
  CHECK(c.model.d == 3);
  CHECK(c.model.n == 50);
  CHECK(c.model.law.kind == EntryLaw::Kind::pareto_sym);
  CHECK(c.model.law.b == 6.0);
  CHECK(c.model.law.gamma == 1.5);
  CHECK(c.model.dependence == Dependence::sign_modulated);
  CHECK(c.norm_p == kInf);
  CHECK(c.kappa_mode.estimated);
  CHECK(c.kappa_mode.eps_grid == std::vector<double>{0.05, 0.1, 0.2});
  CHECK(c.kappa_mode.cloud_size == 500);
  CHECK(c.moment_profile.family == "heavy_tail");
  CHECK(c.moment_profile.b == 6.0);
  CHECK(c.p_grid.size() == 3);
  CHECK(c.t_grid.size() == 3);
  CHECK(c.paths == 2000);
  CHECK(c.tail_samples == 50000);
  CHECK(c.moment_orders == std::vector<double>{4.0, 5.0});
  CHECK(c.bound_scale == 0.5);
  CHECK(c.seed == 42);
  CHECK(c.threads == 2);
  CHECK(c.output.format == "json");
  CHECK(c.output.path == "run7");
  CHECK(c.output.dump_paths);
}

TEST_CASE("echoed config re-parses to the identical echo") {
  for (const std::string text : {std::string("{}"), std::string(kRichConfig),
                                 std::string(R"({"model": {"law": {"family": "gaussian",
                                 "sigma": 0.5}}, "kappa_mode": {"mode": "analytic",
                                 "value": 3.0}})")}) {
    const nlohmann::ordered_json first = echo_config(parse_config(text));
    const nlohmann::ordered_json second = echo_config(parse_config(first.dump()));
    CHECK(first == second);
  }

  // infinity survives the string detour
  const nlohmann::ordered_json echoed = echo_config(parse_config(kRichConfig));
  CHECK(echoed["norm"]["p"] == "inf");
  CHECK(parse_config(echoed.dump()).norm_p == kInf);

  // the analytic default omits the value key entirely
  const nlohmann::ordered_json plain = echo_config(parse_config("{}"));
  CHECK(plain["kappa_mode"]["mode"] == "analytic");
  CHECK_FALSE(plain["kappa_mode"].contains("value"));
}

TEST_CASE("unknown keys are rejected with their path") {
  CHECK(mentions(config_error(R"({"pths": 3})"), "config.pths"));
  CHECK(mentions(config_error(R"({"model": {"lwa": 1}})"), "model.lwa"));
  CHECK(mentions(config_error(R"({"model": {"law": {"family": "gaussian", "sgma": 1}}})"),
                 "model.law.sgma"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "analytic", "clouds": 2}})"),
                 "kappa_mode.clouds"));
  CHECK(mentions(config_error(R"({"moment_profile": {"family": "bounded", "mm": 2}})"),
                 "moment_profile.mm"));
  CHECK(mentions(config_error(R"({"output": {"fmt": "csv"}})"), "output.fmt"));
}

TEST_CASE("malformed documents report line and column") {
  const std::string broken = "{\n  \"paths\": 10,\n  \"threads\": ,\n}";
  const std::string message = config_error(broken);
  CHECK(mentions(message, "parse error"));
  CHECK(mentions(message, "line 3"));
  CHECK(config_error("") != "");
  CHECK_THROWS_AS(load_config_file("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("field validation") {
  CHECK(mentions(config_error(R"({"model": {"d": 0}})"), "model.d"));
  CHECK(mentions(config_error(R"({"model": {"n": -2}})"), "model.n"));
  CHECK(mentions(config_error(R"({"model": {"law": {"family": "cauchy"}}})"), "unknown entry law"));
  CHECK(mentions(config_error(R"({"model": {"law": {"family": "gaussian", "sigma": -1}}})"),
                 "model.law"));
  CHECK(mentions(config_error(R"({"model": {"dependence": "both"}})"), "model.dependence"));
  CHECK(mentions(config_error(R"({"norm": {"p": 0.5}})"), "norm.p"));
  CHECK(mentions(config_error(R"({"norm": {"p": "INF"}})"), "expected a number"));
  CHECK(mentions(config_error(R"({"model": {"d": 2}, "norm": {"d": 3}})"), "norm.d"));
  CHECK(mentions(config_error(R"({"paths": 0})"), "paths"));
  CHECK(mentions(config_error(R"({"tail_samples": -1})"), "tail_samples"));
  CHECK(mentions(config_error(R"({"moment_orders": [4.0, 0.5]})"), "moment_orders"));
  CHECK(mentions(config_error(R"({"bound_scale": 0})"), "bound_scale"));
  CHECK(mentions(config_error(R"({"threads": -1})"), "threads"));
  CHECK(mentions(config_error(R"({"seed": "big"})"), "seed"));
  CHECK(mentions(config_error(R"({"output": {"format": "yaml"}})"), "output.format"));
  CHECK(mentions(config_error(R"({"moment_profile": {"family": "exotic"}})"),
                 "moment_profile.family"));
  CHECK(mentions(config_error(R"({"moment_profile": {"family": "tabulated"}})"),
                 "needs p_grid and values"));
}

TEST_CASE("kappa mode keys are mutually exclusive") {
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "analytic", "eps_grid": [0.1]}})"),
                 "only apply to mode 'estimated'"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "analytic", "cloud_size": 99}})"),
                 "only apply to mode 'estimated'"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "estimated", "value": 2.0}})"),
                 "only applies to mode 'analytic'"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "estimated", "cloud_size": 1}})"),
                 "cloud_size"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "analytic", "value": -2}})"),
                 "kappa_mode.value"));
  CHECK(mentions(config_error(R"({"kappa_mode": {"mode": "guessed"}})"), "kappa_mode.mode"));
}

TEST_CASE("seed accepts the full unsigned range") {
  const ExperimentConfig c = parse_config(R"({"seed": 18446744073709551615})");
  CHECK(c.seed == 18446744073709551615ull);
  const nlohmann::ordered_json echoed = echo_config(c);
  CHECK(parse_config(echoed.dump()).seed == 18446744073709551615ull);
}

TEST_CASE("shortest round-trip double formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  for (double x : {1e300, -2.2250738585072014e-308, 3.141592653589793, 910.9639628808122,
                   1.0 / 3.0}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("csv emitters: headers, rows, verdict strings") {
  std::vector<MomentRow> moments(2);
  moments[0] = {4.0, 1.5, 0.01, 20.0, 18.5, true};
  moments[1] = {6.0, 2.5, 0.02, 1.0, -1.5, false};
  const std::string mcsv = moment_rows_csv(moments);
  CHECK(mentions(mcsv, "p,empirical,stderr,bound,margin,verdict\n"));
  CHECK(mentions(mcsv, "4,1.5,0.01,20,18.5,PASS\n"));
  CHECK(mentions(mcsv, "6,2.5,0.02,1,-1.5,FAIL\n"));

  std::vector<TailRow> tails(1);
  tails[0] = {3.0, 0.125, 0.1, 0.15, 0.005, 0.5, 0.375, true};
  const std::string tcsv = tail_rows_csv(tails);
  CHECK(mentions(tcsv, "t,frequency,wilson_lo,wilson_hi,stderr,bound,margin,verdict\n"));
  CHECK(mentions(tcsv, "3,0.125,0.1,0.15,0.005,0.5,0.375,PASS\n"));

  EmpiricalReport report;
  report.moments = moments;
  report.tails = tails;
  const std::string rcsv = report_csv(report);
  CHECK(rcsv.substr(0, rcsv.find('\n')) == "section,x,empirical,stderr,bound,margin,verdict");
  std::size_t lines = 0;
  for (char ch : rcsv) lines += ch == '\n';
  CHECK(lines == 4);  // header + 2 moment rows + 1 tail row
  CHECK(mentions(rcsv, "moment,4,"));
  CHECK(mentions(rcsv, "tail,3,"));

  TailCurve curve;
  curve.t = {3.0, 10.0};
  curve.bound = {0.5, 0.01};
  curve.k = 1.0;
  curve.provenance = "exp(-h_conj[beta](ln t))";
  const std::string ccsv = tail_curve_csv(curve);
  CHECK(mentions(ccsv, "t,bound,provenance\n"));
  CHECK(mentions(ccsv, "10,0.01,exp(-h_conj[beta](ln t))\n"));
}

TEST_CASE("json report round-trips losslessly, non-finite values included") {
  EmpiricalReport report;
  report.model = "d=2, n=25, law=gaussian(sigma=1), independent";
  report.norm = "l2(d=2)";
  report.aggregation = "dual_pairing";
  report.moment_paths = 1000;
  report.tail_paths = 5000;
  report.seed = 17;
  report.horizon = 25;
  report.kappa = 2.0;
  report.c_z = 2.0;
  report.dependence_factor = 1.0;
  report.bound_scale = 1.0;
  report.moments.push_back({4.0, 1.25, 0.003, 900.0, 898.75, true});
  report.moments.push_back({8.0, 2.0, 0.01, kInf, kInf, true});
  report.tails.push_back({3.0, 0.0, 0.0, 0.001, 0.0, 1.0, 1.0, true});
  report.tails.push_back({30.0, 0.25, 0.2, 0.3, 0.006, 0.1, -0.15, false});

  const nlohmann::ordered_json j = report_json(report);
  CHECK(j["moments"][1]["bound"] == "inf");  // strings keep the document valid JSON
  CHECK(j["provenance"]["moment_bound"] == "sqrt(n) * beta(p)");
  CHECK(j["all_pass"] == false);

  const EmpiricalReport back = report_from_json(j);
  CHECK(back.model == report.model);
  CHECK(back.norm == report.norm);
  CHECK(back.aggregation == report.aggregation);
  CHECK(back.moment_paths == report.moment_paths);
  CHECK(back.tail_paths == report.tail_paths);
  CHECK(back.seed == report.seed);
  CHECK(back.horizon == report.horizon);
  CHECK(back.kappa == report.kappa);
  CHECK(back.c_z == report.c_z);
  CHECK(back.dependence_factor == report.dependence_factor);
  CHECK(back.bound_scale == report.bound_scale);
  REQUIRE(back.moments.size() == 2);
  REQUIRE(back.tails.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.moments[i].p == report.moments[i].p);
    CHECK(back.moments[i].empirical == report.moments[i].empirical);
    CHECK(back.moments[i].stderr_ == report.moments[i].stderr_);
    CHECK(back.moments[i].bound == report.moments[i].bound);
    CHECK(back.moments[i].margin == report.moments[i].margin);
    CHECK(back.moments[i].pass == report.moments[i].pass);
    CHECK(back.tails[i].t == report.tails[i].t);
    CHECK(back.tails[i].frequency == report.tails[i].frequency);
    CHECK(back.tails[i].wilson_lo == report.tails[i].wilson_lo);
    CHECK(back.tails[i].wilson_hi == report.tails[i].wilson_hi);
    CHECK(back.tails[i].stderr_ == report.tails[i].stderr_);
    CHECK(back.tails[i].bound == report.tails[i].bound);
    CHECK(back.tails[i].margin == report.tails[i].margin);
    CHECK(back.tails[i].pass == report.tails[i].pass);
  }
  CHECK_FALSE(back.all_pass());
  CHECK(back.failures() == 1);

  // NaN survives as a quiet NaN rather than a parse failure
  EmpiricalReport weird = report;
  weird.kappa = std::nan("");
  CHECK(std::isnan(report_from_json(report_json(weird)).kappa));
}

TEST_CASE("text file round trip") {
  const std::string path = "/tmp/martnorm_config_test_roundtrip.txt";
  const std::string content = "alpha\nbeta\n\x01\x02 binary-ish\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.txt"), std::runtime_error);
}
