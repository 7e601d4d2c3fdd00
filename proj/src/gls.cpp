#include "martnorm/gls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace martnorm {

namespace {

constexpr double kE = 2.7182818284590452354;

void require_positive_grid(const std::vector<double>& grid, const char* who) {
  if (grid.empty()) throw std::invalid_argument(std::string(who) + ": empty p grid");
}

}  // namespace

SlowlyVarying sv_unit() {
  return {"1", [](double) { return 1.0; }};
}

SlowlyVarying sv_log() {
  return {"ln(e+x)", [](double x) { return std::log(kE + x); }};
}

PsiFunction PsiFunction::power(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("PsiFunction::power: m > 0 required");
  PsiFunction psi;
  psi.fn_ = [m](double p) { return std::pow(p, 1.0 / m); };
  psi.family_ = "power(m=" + std::to_string(m) + ")";
  return psi;
}

PsiFunction PsiFunction::heavy_tail(double b, double gamma, SlowlyVarying s) {
  if (!(b > 1.0)) throw std::invalid_argument("PsiFunction::heavy_tail: b > 1 required");
  PsiFunction psi;
  psi.p_hi_ = b;
  psi.fn_ = [b, gamma, s](double p) { return heavy_tail_psi(b, gamma, s, p); };
  psi.family_ = "heavy_tail(b=" + std::to_string(b) + ", gamma=" + std::to_string(gamma) +
                ", S=" + s.name + ")";
  return psi;
}

PsiFunction PsiFunction::tabulated(std::vector<double> p_grid, std::vector<double> values) {
  if (p_grid.size() != values.size() || p_grid.size() < 2)
    throw std::invalid_argument("PsiFunction::tabulated: need >= 2 matched grid points");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (i > 0 && !(p_grid[i] > p_grid[i - 1]))
      throw std::invalid_argument("PsiFunction::tabulated: p grid must be strictly increasing");
    if (!(values[i] > 0.0))
      throw std::invalid_argument("PsiFunction::tabulated: psi must be strictly positive");
  }
  PsiFunction psi;
  psi.p_lo_ = p_grid.front();
  psi.p_hi_ = p_grid.back();
  psi.fn_ = [p = std::move(p_grid), v = std::move(values)](double q) {
    const auto it = std::lower_bound(p.begin(), p.end(), q);
    if (it == p.begin()) return v.front();
    if (it == p.end()) return v.back();
    const std::size_t j = static_cast<std::size_t>(it - p.begin());
    const double w = (q - p[j - 1]) / (p[j] - p[j - 1]);
    return v[j - 1] + w * (v[j] - v[j - 1]);
  };
  return psi;
}

PsiFunction PsiFunction::from_beta(std::function<double(double)> beta, double p_lo, double p_hi,
                                   std::string label) {
  if (!beta) throw std::invalid_argument("PsiFunction::from_beta: empty function");
  if (!(p_hi > p_lo)) throw std::invalid_argument("PsiFunction::from_beta: empty domain");
  PsiFunction psi;
  psi.p_lo_ = p_lo;
  psi.p_hi_ = p_hi;
  psi.fn_ = std::move(beta);
  psi.family_ = "from_beta(" + std::move(label) + ")";
  return psi;
}

double PsiFunction::operator()(double p) const {
  if (!fn_) throw std::logic_error("PsiFunction: evaluated before construction");
  if (!(p > p_lo_) || !(p < p_hi_))
    throw std::domain_error("PsiFunction: p outside the domain (p_lo, p_hi)");
  return fn_(p);
}

std::vector<double> PsiFunction::default_grid() const { return conjugate_grid(p_lo_, p_hi_); }

std::vector<double> conjugate_grid(double p_lo, double p_hi, int body_points) {
  if (!(p_hi > p_lo)) throw std::invalid_argument("conjugate_grid: empty domain");
  if (body_points < 2) throw std::invalid_argument("conjugate_grid: need >= 2 body points");
  const bool unbounded = std::isinf(p_hi);
  const double hi_cap = unbounded ? std::max(1e4, 2.0 * p_lo) : p_hi;
  const double span = hi_cap - p_lo;

  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(body_points) + 100);
  for (int k = 1; k <= 48; ++k) {
    g.push_back(p_lo + span * std::ldexp(1.0, -k));
    if (!unbounded) g.push_back(p_hi - span * std::ldexp(1.0, -k));
  }
  const double blo = std::log(p_lo + span * 1e-6);
  const double bhi = std::log(hi_cap - (unbounded ? 0.0 : span * 1e-6));
  for (int i = 0; i < body_points; ++i)
    g.push_back(std::exp(blo + (bhi - blo) * i / (body_points - 1.0)));

  std::sort(g.begin(), g.end());
  g.erase(std::remove_if(g.begin(), g.end(),
                         [&](double p) { return !(p > p_lo) || !(p < p_hi); }),
          g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

double gls_norm(const std::function<double(double)>& moment_fn, const PsiFunction& psi,
                const std::vector<double>& p_grid) {
  require_positive_grid(p_grid, "gls_norm");
  std::vector<double> grid = p_grid;
  std::sort(grid.begin(), grid.end());
  std::vector<double> ratio;
  ratio.reserve(grid.size());
  for (double p : grid) {
    if (!(p > psi.p_lo()) || !(p < psi.p_hi())) continue;
    ratio.push_back(moment_fn(p) / psi(p));
  }
  if (ratio.empty()) throw std::invalid_argument("gls_norm: no grid point inside psi's domain");

  const std::size_t tail_start = ratio.size() - std::max<std::size_t>(ratio.size() / 10, 1);
  double sup_rest = 0.0, sup_tail = 0.0;
  for (std::size_t i = 0; i < ratio.size(); ++i)
    (i < tail_start ? sup_rest : sup_tail) = std::max(i < tail_start ? sup_rest : sup_tail, ratio[i]);
  const double sup = std::max(sup_rest, sup_tail);
  if (std::isinf(sup)) return sup;
  // the ratio is still climbing hard at the window's edge: call it unbounded
  if (sup_tail > 10.0 * sup_rest && sup_tail > 0.0)
    return std::numeric_limits<double>::infinity();
  return sup;
}

double gls_norm(const std::function<double(double)>& moment_fn, const PsiFunction& psi) {
  return gls_norm(moment_fn, psi, psi.default_grid());
}

double young_fenchel(const PsiFunction& psi, double t, const std::vector<double>& p_grid) {
  if (!(t >= 1.0)) throw std::domain_error("young_fenchel: t >= 1 required");
  require_positive_grid(p_grid, "young_fenchel");
  double best = -std::numeric_limits<double>::infinity();
  for (double p : p_grid) {
    if (!(p > psi.p_lo()) || !(p < psi.p_hi())) continue;
    best = std::max(best, p * (t - std::log(psi(p))));
  }
  if (std::isinf(best) && best < 0)
    throw std::invalid_argument("young_fenchel: no grid point inside psi's domain");
  return best;
}

double young_fenchel(const PsiFunction& psi, double t) {
  return young_fenchel(psi, t, psi.default_grid());
}

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double gls_tail_bound(double t, double k, const PsiFunction& psi,
                      const std::vector<double>& p_grid) {
  if (!(k > 0.0)) throw std::invalid_argument("gls_tail_bound: K > 0 required");
  if (!(t >= kE * k))
    throw std::domain_error("gls_tail_bound: below the validity threshold t >= e*K");
  return clamp01(2.0 * std::exp(-young_fenchel(psi, std::log(t / k), p_grid)));
}

double gls_tail_bound(double t, double k, const PsiFunction& psi) {
  return gls_tail_bound(t, k, psi, psi.default_grid());
}

double martingale_tail_bound(double t, const PsiFunction& beta_as_psi,
                             const std::vector<double>& p_grid) {
  if (!(t >= kE)) throw std::domain_error("martingale_tail_bound: t >= e required");
  return clamp01(std::exp(-young_fenchel(beta_as_psi, std::log(t), p_grid)));
}

double martingale_tail_bound(double t, const PsiFunction& beta_as_psi) {
  return martingale_tail_bound(t, beta_as_psi, beta_as_psi.default_grid());
}

double heavy_tail(double b, double gamma, const SlowlyVarying& s, double t) {
  if (!(b > 1.0)) throw std::invalid_argument("heavy_tail: b > 1 required");
  if (!(t >= kE)) throw std::domain_error("heavy_tail: t >= e required");
  const double lt = std::log(t);
  return clamp01(std::pow(t, -b) * std::pow(lt, gamma) * s(lt));
}

double heavy_tail_psi(double b, double gamma, const SlowlyVarying& s, double p) {
  if (!(b > 1.0)) throw std::invalid_argument("heavy_tail_psi: b > 1 required");
  if (!(p >= 1.0) || !(p < b)) throw std::domain_error("heavy_tail_psi: requires 1 <= p < b");
  return std::pow(b - p, -(gamma + 1.0) / b) * std::pow(s(1.0 / (b - p)), 1.0 / b);
}

double moment_from_tail(const std::function<double(double)>& tail, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("moment_from_tail: p >= 1 required");
  // P(|xi| >= t) <= 1 on [0, e]: that segment contributes at most e^p exactly
  double total = std::exp(p);  // integral of p t^(p-1) over [0, e] = e^p
  // log-spaced trapezoid on [e, 1e6] of p t^(p-1) T(t) = p e^(p x) T(e^x) dx
  constexpr int kNodes = 10000;
  const double x_lo = 1.0, x_hi = std::log(1e6);
  const double dx = (x_hi - x_lo) / (kNodes - 1);
  double prev = p * std::exp(p * x_lo) * tail(std::exp(x_lo));
  for (int i = 1; i < kNodes; ++i) {
    const double x = x_lo + i * dx;
    const double cur = p * std::exp(p * x) * tail(std::exp(x));
    total += 0.5 * (prev + cur) * dx;
    prev = cur;
  }
  return std::pow(total, 1.0 / p);
}

namespace {

TailCurve build_curve(const std::vector<double>& t_grid, std::string provenance, double k,
                      const std::function<double(double)>& eval) {
  if (t_grid.empty()) throw std::invalid_argument("tail curve: empty t grid");
  TailCurve curve;
  curve.t = t_grid;
  std::sort(curve.t.begin(), curve.t.end());
  curve.bound.reserve(curve.t.size());
  for (double t : curve.t) curve.bound.push_back(eval(t));
  curve.provenance = std::move(provenance);
  curve.k = k;
  return curve;
}

}  // namespace

TailCurve martingale_tail_curve(const std::vector<double>& t_grid, const PsiFunction& beta_as_psi) {
  const std::vector<double> grid = beta_as_psi.default_grid();
  return build_curve(t_grid, "exp(-h_conj[beta](ln t))", 1.0,
                     [&](double t) { return martingale_tail_bound(t, beta_as_psi, grid); });
}

TailCurve gls_tail_curve(const std::vector<double>& t_grid, double k, const PsiFunction& psi) {
  const std::vector<double> grid = psi.default_grid();
  return build_curve(t_grid, "2*exp(-h_conj(ln(t/K)))", k,
                     [&](double t) { return gls_tail_bound(t, k, psi, grid); });
}

}  // namespace martnorm
