#include "martnorm/mart_sim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace martnorm {
namespace {

constexpr double kE = 2.7182818284590452354;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rng_sign(CounterRng& rng) { return (rng.next_u64() >> 63) ? -1.0 : 1.0; }

// Magnitude with tail T(t) = t^-b (ln t)^gamma for t >= e, uniform on [0, e)
// below.  u < T(e) = e^-b lands in the tail and inverts T; the rest fills the
// uniform core, so the tail is exact (no truncation) yet every moment p < b
// is finite and available in closed or rapidly computable form.
double pareto_magnitude(double b, double gamma, double u) {
  const double q = std::exp(-b);
  if (u >= q) return kE * (u - q) / (1.0 - q);
  if (gamma == 0.0) return std::pow(u, -1.0 / b);
  // Solve b*L - gamma*ln L = -ln u for L >= 1 (strictly increasing there),
  // then t = e^L.  Newton from the gamma = 0 solution.
  const double target = -std::log(u);
  double l = std::max(1.0, target / b);
  for (int it = 0; it < 100; ++it) {
    const double f = b * l - gamma * std::log(l) - target;
    const double fp = std::max(b - gamma / l, 1e-12);
    const double step = f / fp;
    l = std::max(1.0, l - step);
    if (std::abs(step) <= 1e-15 * l) break;
  }
  return std::exp(l);
}

// p * integral_1^inf e^{-(b-p)x} x^gamma dx by trapezoid; the integrand decays
// exponentially, so a generous uniform window suffices.
double pareto_tail_moment_part(double b, double gamma, double p) {
  const double a = b - p;
  const double hi = 1.0 + (60.0 + 20.0 * std::abs(gamma)) / a;
  const int n = 20000;
  const double h = (hi - 1.0) / n;
  auto f = [&](double x) { return std::exp(-a * x + gamma * std::log(x)); };
  double acc = 0.5 * (f(1.0) + f(hi));
  for (int i = 1; i < n; ++i) acc += f(1.0 + i * h);
  return p * acc * h;
}

}  // namespace

EntryLaw EntryLaw::rademacher() { return EntryLaw{}; }

EntryLaw EntryLaw::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("EntryLaw::gaussian: sigma > 0 required");
  EntryLaw law;
  law.kind = Kind::gaussian;
  law.sigma = sigma;
  return law;
}

EntryLaw EntryLaw::weibull_sym(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("EntryLaw::weibull_sym: delta > 0 required");
  EntryLaw law;
  law.kind = Kind::weibull_sym;
  law.delta = delta;
  return law;
}

EntryLaw EntryLaw::pareto_sym(double b, double gamma) {
  if (!(b > 1.0)) throw std::invalid_argument("EntryLaw::pareto_sym: b > 1 required");
  if (!(gamma <= b)) {
    throw std::invalid_argument("EntryLaw::pareto_sym: gamma <= b required for a monotone tail");
  }
  EntryLaw law;
  law.kind = Kind::pareto_sym;
  law.b = b;
  law.gamma = gamma;
  return law;
}

std::string EntryLaw::describe() const {
  char buf[96];
  switch (kind) {
    case Kind::rademacher:
      return "rademacher";
    case Kind::gaussian:
      std::snprintf(buf, sizeof buf, "gaussian(sigma=%g)", sigma);
      return buf;
    case Kind::weibull_sym:
      std::snprintf(buf, sizeof buf, "weibull_sym(delta=%g)", delta);
      return buf;
    case Kind::pareto_sym:
      std::snprintf(buf, sizeof buf, "pareto_sym(b=%g, gamma=%g)", b, gamma);
      return buf;
  }
  return "unknown";
}

std::string MartingaleModel::describe() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "d=%d, n=%d, law=", d, n);
  std::string s = buf;
  s += law.describe();
  s += dependence == Dependence::sign_modulated ? ", sign_modulated" : ", independent";
  return s;
}

double sample_entry(const EntryLaw& law, CounterRng& rng) {
  switch (law.kind) {
    case EntryLaw::Kind::rademacher:
      return rng_sign(rng);
    case EntryLaw::Kind::gaussian:
      return law.sigma * rng.gaussian();
    case EntryLaw::Kind::weibull_sym: {
      const double mag = std::pow(-std::log(rng.next_open()), law.delta);
      return rng_sign(rng) * mag;
    }
    case EntryLaw::Kind::pareto_sym: {
      const double mag = pareto_magnitude(law.b, law.gamma, rng.next_open());
      return rng_sign(rng) * mag;
    }
  }
  throw std::logic_error("sample_entry: unhandled law");
}

double law_moment(const EntryLaw& law, double p) {
  if (!(p >= 1.0)) throw std::domain_error("law_moment: p >= 1 required");
  switch (law.kind) {
    case EntryLaw::Kind::rademacher:
      return 1.0;
    case EntryLaw::Kind::gaussian:
      // E|N(0,1)|^p = 2^(p/2) Gamma((p+1)/2) / sqrt(pi)
      return law.sigma * std::exp((std::lgamma(0.5 * (p + 1.0)) - 0.5723649429247000870) / p +
                                  0.34657359027997265471);
    case EntryLaw::Kind::weibull_sym:
      // E (E^delta)^p = Gamma(delta p + 1)
      return std::exp(std::lgamma(law.delta * p + 1.0) / p);
    case EntryLaw::Kind::pareto_sym: {
      if (p >= law.b) return kInf;
      const double q = std::exp(-law.b);
      const double core = (1.0 - q) * std::exp(p) / (p + 1.0);
      double tail;
      if (law.gamma == 0.0) {
        tail = std::exp(p - law.b) * law.b / (law.b - p);
      } else {
        tail = std::exp(p) * q + pareto_tail_moment_part(law.b, law.gamma, p);
      }
      return std::pow(core + tail, 1.0 / p);
    }
  }
  throw std::logic_error("law_moment: unhandled law");
}

double law_tail(const EntryLaw& law, double t) {
  if (!(t >= 0.0)) throw std::domain_error("law_tail: t >= 0 required");
  switch (law.kind) {
    case EntryLaw::Kind::rademacher:
      return t <= 1.0 ? 1.0 : 0.0;
    case EntryLaw::Kind::gaussian:
      return std::erfc(t / (law.sigma * 1.4142135623730950488));
    case EntryLaw::Kind::weibull_sym:
      return std::exp(-std::pow(t, 1.0 / law.delta));
    case EntryLaw::Kind::pareto_sym: {
      const double q = std::exp(-law.b);
      if (t >= kE) return std::pow(t, -law.b) * std::pow(std::log(t), law.gamma);
      return q + (1.0 - q) * (1.0 - t / kE);
    }
  }
  throw std::logic_error("law_tail: unhandled law");
}

MomentProfile law_profile(const EntryLaw& law) {
  const double p_sup = law.kind == EntryLaw::Kind::pareto_sym ? law.b : kInf;
  EntryLaw copy = law;
  return MomentProfile::from_function([copy](double p) { return law_moment(copy, p); }, p_sup,
                                      law.describe());
}

double dependence_moment_factor(Dependence dep) {
  return dep == Dependence::sign_modulated ? 2.0 : 1.0;
}

namespace {

void check_model(const MartingaleModel& model) {
  if (model.d < 1) throw std::invalid_argument("MartingaleModel: d >= 1 required");
  if (model.n < 1) throw std::invalid_argument("MartingaleModel: n >= 1 required");
}

// Shared inner loop: fills xi for step k and advances the running sum.
template <typename Sink>
void run_path(const MartingaleModel& model, std::uint64_t seed, std::int64_t path, Sink&& sink) {
  const int d = model.d;
  const bool modulated = model.dependence == Dependence::sign_modulated;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd xi(d, d);
  const auto upath = static_cast<std::uint64_t>(path);
  for (int k = 0; k < model.n; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        CounterRng rng =
            entry_stream(seed, upath, static_cast<std::uint64_t>(k),
                         static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) + j);
        xi(i, j) = sample_entry(model.law, rng);
      }
    }
    if (modulated) xi *= 1.0 + std::tanh(v(0, 0));
    v += xi;
    sink(k, xi, v);
  }
}

}  // namespace

std::vector<Eigen::MatrixXd> generate_differences(const MartingaleModel& model, std::uint64_t seed,
                                                  std::int64_t path) {
  check_model(model);
  if (path < 0) throw std::invalid_argument("generate_differences: path >= 0 required");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(model.n));
  run_path(model, seed, path,
           [&](int, const Eigen::MatrixXd& xi, const Eigen::MatrixXd&) { out.push_back(xi); });
  return out;
}

MartingalePath assemble_martingale(std::vector<Eigen::MatrixXd> differences, std::uint64_t seed) {
  if (differences.empty()) throw std::invalid_argument("assemble_martingale: empty sequence");
  const auto rows = differences.front().rows();
  const auto cols = differences.front().cols();
  if (rows < 1 || rows != cols) {
    throw std::invalid_argument("assemble_martingale: differences must be square");
  }
  MartingalePath path;
  path.seed = seed;
  path.partial_sums.reserve(differences.size() + 1);
  path.partial_sums.push_back(Eigen::MatrixXd::Zero(rows, cols));
  for (const auto& xi : differences) {
    if (xi.rows() != rows || xi.cols() != cols) {
      throw std::invalid_argument("assemble_martingale: mismatched difference dimensions");
    }
    path.partial_sums.push_back(path.partial_sums.back() + xi);
  }
  path.differences = std::move(differences);
  return path;
}

Eigen::MatrixXd final_sum(const MartingaleModel& model, std::uint64_t seed, std::int64_t path) {
  check_model(model);
  if (path < 0) throw std::invalid_argument("final_sum: path >= 0 required");
  Eigen::MatrixXd out;
  run_path(model, seed, path, [&](int k, const Eigen::MatrixXd&, const Eigen::MatrixXd& v) {
    if (k + 1 == model.n) out = v;
  });
  return out;
}

double khintchine_sum(const MartingalePath& path, const Eigen::VectorXd& b) {
  if (path.differences.empty() || path.differences.front().rows() != 1) {
    throw std::invalid_argument("khintchine_sum: needs a one-dimensional path");
  }
  if (b.size() != static_cast<Eigen::Index>(path.differences.size())) {
    throw std::invalid_argument("khintchine_sum: coefficient length must match step count");
  }
  if (std::abs(b.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("khintchine_sum: coefficients must form a unit vector");
  }
  double acc = 0.0;
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    acc += b(k) * path.differences[static_cast<std::size_t>(k)](0, 0);
  }
  return acc;
}

}  // namespace martnorm
