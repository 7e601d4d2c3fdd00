#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace martnorm {

/// Slowly varying correction factor S(x): S(cx)/S(x) -> 1 as x -> infinity.
struct SlowlyVarying {
  std::string name;
  std::function<double(double)> fn;
  double operator()(double x) const { return fn(x); }
};

SlowlyVarying sv_unit();  // S(x) = 1
SlowlyVarying sv_log();   // S(x) = ln(e + x)

/// Generator psi of a grand Lebesgue norm sup_p |eta|_p / psi(p): strictly
/// positive and piecewise continuous on an open interval (p_lo, p_hi).
class PsiFunction {
 public:
  /// psi(p) = p^(1/m) on (1, inf); m = 2 is the subgaussian generator.
  static PsiFunction power(double m);
  /// psi(p) = (b-p)^(-(gamma+1)/b) * S(1/(b-p))^(1/b) on (1, b); diverges at b.
  static PsiFunction heavy_tail(double b, double gamma, SlowlyVarying s = sv_unit());
  /// Piecewise-linear interpolation of tabulated values (strictly positive).
  static PsiFunction tabulated(std::vector<double> p_grid, std::vector<double> values);
  /// Wraps a moment-bound curve beta(p) as the generator of its own space.
  static PsiFunction from_beta(std::function<double(double)> beta, double p_lo, double p_hi,
                               std::string label = "beta");

  double operator()(double p) const;
  double p_lo() const { return p_lo_; }
  double p_hi() const { return p_hi_; }
  const std::string& family() const { return family_; }
  /// Evaluation grid for conjugation: log-spaced body plus geometric
  /// refinement into both endpoints (resolution matters only there).
  std::vector<double> default_grid() const;

 private:
  std::function<double(double)> fn_;
  double p_lo_ = 1.0;
  double p_hi_ = std::numeric_limits<double>::infinity();
  std::string family_ = "tabulated";
};

/// Grid used to take sups over p in (p_lo, p_hi); exposed for tests.
std::vector<double> conjugate_grid(double p_lo, double p_hi, int body_points = 800);

/// sup over the grid of moment_fn(p)/psi(p).  Divergence heuristic: when the
/// sup over the last decile of the grid exceeds 10x the sup over the rest,
/// the norm is reported as +infinity (the ratio is still climbing at the edge
/// of the window, so no finite sup is trustworthy).
double gls_norm(const std::function<double(double)>& moment_fn, const PsiFunction& psi,
                const std::vector<double>& p_grid);
double gls_norm(const std::function<double(double)>& moment_fn, const PsiFunction& psi);

/// h*(t) = sup_p [ p*t - p*ln(psi(p)) ] over the grid; requires t >= 1.
double young_fenchel(const PsiFunction& psi, double t, const std::vector<double>& p_grid);
double young_fenchel(const PsiFunction& psi, double t);

/// Tail bound 2*exp(-h*(ln(t/K))) for a variable with GLS norm K, valid for
/// t >= e*K; clamped to [0, 1].
double gls_tail_bound(double t, double k, const PsiFunction& psi,
                      const std::vector<double>& p_grid);
double gls_tail_bound(double t, double k, const PsiFunction& psi);

/// Tail bound exp(-h*[beta](ln t)) on P(n^{-1/2} ||Theta|| > t) for the
/// normalized martingale whose moment bound curve is beta; valid for t >= e;
/// clamped to [0, 1].  Emitted without a leading factor 2 — the two bound
/// families are kept exactly as their sources print them.
double martingale_tail_bound(double t, const PsiFunction& beta_as_psi,
                             const std::vector<double>& p_grid);
double martingale_tail_bound(double t, const PsiFunction& beta_as_psi);

/// Heavy tail function t^(-b) * (ln t)^gamma * S(ln t), t >= e, clamped to [0,1].
double heavy_tail(double b, double gamma, const SlowlyVarying& s, double t);

/// The generator psi^(b,gamma,S)(p) = (b-p)^(-(gamma+1)/b) * S(1/(b-p))^(1/b)
/// matching that tail; 1 <= p < b.
double heavy_tail_psi(double b, double gamma, const SlowlyVarying& s, double p);

/// p-th moment norm (E|xi|^p)^(1/p) recovered from a tail function via
/// E|xi|^p = int_0^inf p t^(p-1) P(|xi| >= t) dt.  The tail is taken as 1
/// below t = e (an upper bound; the tail functions here are only defined from
/// e on) and integrated to 10^6 on 10^4 log-spaced nodes.
double moment_from_tail(const std::function<double(double)>& tail, double p);

/// A tail bound sampled on a t grid, with the formula that produced it.
struct TailCurve {
  std::vector<double> t;
  std::vector<double> bound;
  std::string provenance;
  double k = 1.0;  // the GLS norm, when the curve is of the 2*exp(-h*(ln(t/K))) kind
};

TailCurve martingale_tail_curve(const std::vector<double>& t_grid, const PsiFunction& beta_as_psi);
TailCurve gls_tail_curve(const std::vector<double>& t_grid, double k, const PsiFunction& psi);

}  // namespace martnorm
