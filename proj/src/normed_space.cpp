#include "martnorm/normed_space.hpp"

#include <algorithm>
#include <cstdio>

namespace martnorm {

namespace {

// Above this dimension the 2^d sign corners are sampled instead of enumerated.
constexpr int kMaxCornerEnumeration = 16;

double frac(double x) { return x - std::floor(x); }

// Low-discrepancy gaussian cloud: Halton points (one prime per dimension,
// consecutive primes starting at prime_offset) shifted by a seeded rotation,
// mapped through Box-Muller.  Column i is the i-th sample.
Eigen::MatrixXd halton_gaussian_cloud(int d, int n, std::uint64_t seed, int prime_offset) {
  const int dims = 2 * ((d + 1) / 2);
  std::vector<int> primes(dims);
  std::vector<double> rot(dims);
  CounterRng rot_rng(stream_key(seed, 0x726f74, static_cast<std::uint64_t>(prime_offset)));
  for (int j = 0; j < dims; ++j) {
    primes[j] = nth_prime(prime_offset + j);
    rot[j] = rot_rng.next_double();
  }
  Eigen::MatrixXd g(d, n);
  constexpr double kTiny = 1.0 / 9007199254740992.0;  // 2^-53
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (int i = 0; i < n; ++i) {
    for (int t = 0; 2 * t < d; ++t) {
      double u1 = frac(radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[2 * t]) + rot[2 * t]);
      double u2 = frac(radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[2 * t + 1]) + rot[2 * t + 1]);
      if (u1 < kTiny) u1 = kTiny;
      const double r = std::sqrt(-2.0 * std::log(u1));
      g(2 * t, i) = r * std::cos(kTwoPi * u2);
      if (2 * t + 1 < d) g(2 * t + 1, i) = r * std::sin(kTwoPi * u2);
    }
  }
  return g;
}

// Deterministic pick of a column on a finite side when the set is paired
// against a sampler; depends only on the side's seed and the pair index.
Eigen::Index finite_side_pick(const ExtremePointSet& side, std::int64_t k) {
  const std::uint64_t h = avalanche64(stream_key(side.seed, static_cast<std::uint64_t>(k), 0x7069636b));
  return static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(side.size()));
}

}  // namespace

NormSpec NormSpec::lp(int d, double p) {
  if (d < 1) throw std::invalid_argument("NormSpec: dimension must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p >= 1 required");
  NormSpec s;
  s.d = d;
  s.p = p;
  return s;
}

std::string NormSpec::describe() const {
  char buf[64];
  if (p == 1.0)
    std::snprintf(buf, sizeof buf, "l1(d=%d)", d);
  else if (p == 2.0)
    std::snprintf(buf, sizeof buf, "l2(d=%d)", d);
  else if (is_inf())
    std::snprintf(buf, sizeof buf, "linf(d=%d)", d);
  else
    std::snprintf(buf, sizeof buf, "lp(p=%g, d=%d)", p, d);
  return buf;
}

NormSpec dual(const NormSpec& s) {
  if (s.p == 1.0) return NormSpec::linf(s.d);
  if (s.is_inf()) return NormSpec::l1(s.d);
  return NormSpec::lp(s.d, s.p / (s.p - 1.0));
}

double spectral_norm_power_iteration(const Eigen::MatrixXd& a, double tol, int max_iter) {
  if (a.size() == 0) throw std::invalid_argument("spectral_norm: empty matrix");
  const bool wide = a.rows() <= a.cols();
  const Eigen::MatrixXd b = wide ? Eigen::MatrixXd(a * a.transpose())
                                 : Eigen::MatrixXd(a.transpose() * a);
  const Eigen::Index n = b.rows();
  CounterRng rng(stream_key(0x5eedf00d, static_cast<std::uint64_t>(n)));
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.gaussian();
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd w = b * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= tol * std::max(std::abs(next), 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double spectral_norm(const Eigen::MatrixXd& a, double tol) {
  if (a.size() == 0) throw std::invalid_argument("spectral_norm: empty matrix");
  const Eigen::Index m = std::min(a.rows(), a.cols());
  if (m == 1) return a.norm();  // rank <= 1: Frobenius equals the top singular value
  if (m == 2) {
    const bool wide = a.rows() <= a.cols();
    const Eigen::Matrix2d b = wide ? Eigen::Matrix2d(a * a.transpose())
                                   : Eigen::Matrix2d(a.transpose() * a);
    const double tr = b(0, 0) + b(1, 1);
    const double gap = std::hypot(b(0, 0) - b(1, 1), 2.0 * b(0, 1));
    return std::sqrt(std::max(0.5 * (tr + gap), 0.0));
  }
  return spectral_norm_power_iteration(a, tol);
}

double operator_norm(const Eigen::MatrixXd& a, const NormSpec& spec, int sample_count,
                     std::uint64_t seed) {
  if (a.rows() != a.cols()) throw std::invalid_argument("operator_norm: matrix must be square");
  if (a.rows() != spec.d)
    throw std::invalid_argument("operator_norm: matrix dimension does not match spec");
  if (spec.p == 1.0) return a.cwiseAbs().colwise().sum().maxCoeff();
  if (spec.is_inf()) return a.cwiseAbs().rowwise().sum().maxCoeff();
  if (spec.p == 2.0) return spectral_norm(a);
  const ExtremePointSet sphere = extreme_points(spec, seed, sample_count);
  return operator_norm(a, spec, sphere);
}

double operator_norm(const Eigen::MatrixXd& a, const NormSpec& spec,
                     const ExtremePointSet& sphere) {
  if (a.rows() != a.cols()) throw std::invalid_argument("operator_norm: matrix must be square");
  if (a.rows() != spec.d)
    throw std::invalid_argument("operator_norm: matrix dimension does not match spec");
  if (spec.p == 1.0) return a.cwiseAbs().colwise().sum().maxCoeff();
  if (spec.is_inf()) return a.cwiseAbs().rowwise().sum().maxCoeff();
  if (spec.p == 2.0) return spectral_norm(a);
  if (sphere.points.rows() != spec.d)
    throw std::invalid_argument("operator_norm: sphere sample does not match spec dimension");
  const Eigen::MatrixXd ax = a * sphere.points;
  double best = 0.0;
  for (Eigen::Index k = 0; k < ax.cols(); ++k)
    best = std::max(best, vector_norm(ax.col(k), spec.p));
  return best;
}

ExtremePointSet extreme_points(const NormSpec& spec, std::uint64_t seed, int sample_count,
                               int halton_offset) {
  if (sample_count < 1) throw std::invalid_argument("extreme_points: sample_count must be >= 1");
  ExtremePointSet set;
  set.spec = spec;
  set.seed = seed;
  set.halton_offset = halton_offset;
  const int d = spec.d;

  if (d == 1) {  // every l^p ball in R^1 is [-1, 1]
    set.finite = true;
    set.points.resize(1, 2);
    set.points << 1.0, -1.0;
    return set;
  }
  if (spec.p == 1.0) {
    set.finite = true;
    set.points = Eigen::MatrixXd::Zero(d, 2 * d);
    for (int i = 0; i < d; ++i) {
      set.points(i, i) = 1.0;
      set.points(i, d + i) = -1.0;
    }
    return set;
  }
  if (spec.is_inf()) {
    if (d <= kMaxCornerEnumeration) {
      set.finite = true;
      const std::int64_t n = std::int64_t{1} << d;
      set.points.resize(d, n);
      for (std::int64_t k = 0; k < n; ++k)
        for (int j = 0; j < d; ++j) set.points(j, k) = ((k >> j) & 1) ? 1.0 : -1.0;
      return set;
    }
    set.finite = false;
    set.points.resize(d, sample_count);
    for (int i = 0; i < sample_count; ++i) {
      CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(i),
                                static_cast<std::uint64_t>(halton_offset), 0x636f726e));
      std::uint64_t bits = 0;
      for (int j = 0; j < d; ++j) {
        if (j % 64 == 0) bits = rng.next_u64();
        set.points(j, i) = (bits >> (j % 64)) & 1 ? 1.0 : -1.0;
      }
    }
    return set;
  }

  // 1 < p < inf: every sphere point is extreme; sample the sphere through a
  // low-discrepancy gaussian cloud normalized in the l^p norm.
  set.finite = false;
  set.points = halton_gaussian_cloud(d, sample_count, seed, halton_offset);
  for (Eigen::Index i = 0; i < set.points.cols(); ++i) {
    const double nrm = vector_norm(set.points.col(i), spec.p);
    if (nrm > 0.0)
      set.points.col(i) /= nrm;
    else
      set.points.col(i) = Eigen::VectorXd::Unit(d, 0);
  }
  return set;
}

ExtremePointSet fixed_point_set(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw std::invalid_argument("fixed_point_set: empty vector");
  ExtremePointSet set;
  set.spec = NormSpec::l2(static_cast<int>(x.size()));
  set.finite = true;
  set.points = x;
  return set;
}

std::int64_t TensorExtremeSet::size() const {
  const std::int64_t nx = x_side.size();
  const std::int64_t ny = y_side.size();
  if (finite()) return nx * ny;
  if (!x_side.finite && !y_side.finite) return std::min(nx, ny);
  return x_side.finite ? ny : nx;
}

void TensorExtremeSet::pair(std::int64_t k, Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  if (k < 0 || k >= size()) throw std::invalid_argument("TensorExtremeSet: element index out of range");
  Eigen::Index ix, iy;
  if (finite()) {
    ix = static_cast<Eigen::Index>(k / y_side.size());
    iy = static_cast<Eigen::Index>(k % y_side.size());
  } else {
    ix = x_side.finite ? finite_side_pick(x_side, k) : static_cast<Eigen::Index>(k);
    iy = y_side.finite ? finite_side_pick(y_side, k) : static_cast<Eigen::Index>(k);
  }
  x = x_side.points.col(ix);
  y = y_side.points.col(iy);
}

Eigen::MatrixXd TensorExtremeSet::element(std::int64_t k) const {
  Eigen::VectorXd x, y;
  pair(k, x, y);
  return x * y.transpose();
}

Eigen::MatrixXd TensorExtremeSet::entry_cloud(std::int64_t max_points, std::uint64_t seed) const {
  if (max_points < 1) throw std::invalid_argument("entry_cloud: max_points must be >= 1");
  const std::int64_t total = size();
  const std::int64_t m = std::min(total, max_points);
  const Eigen::Index dx = x_side.points.rows();
  const Eigen::Index dy = y_side.points.rows();
  Eigen::MatrixXd cloud(m, dx * dy);
  Eigen::VectorXd x, y;
  for (std::int64_t j = 0; j < m; ++j) {
    const std::int64_t k =
        (total <= max_points)
            ? j
            : static_cast<std::int64_t>(avalanche64(stream_key(seed, static_cast<std::uint64_t>(j), 0x636c6f75)) %
                                        static_cast<std::uint64_t>(total));
    pair(k, x, y);
    const Eigen::MatrixXd z = x * y.transpose();
    cloud.row(j) = Eigen::Map<const Eigen::RowVectorXd>(z.data(), dx * dy);
  }
  return cloud;
}

TensorExtremeSet tensor_extreme_set(ExtremePointSet x_side, ExtremePointSet y_side) {
  if (x_side.points.rows() != y_side.points.rows())
    throw std::invalid_argument("tensor_extreme_set: sides must share the ambient dimension");
  if (x_side.size() == 0 || y_side.size() == 0)
    throw std::invalid_argument("tensor_extreme_set: empty side");
  TensorExtremeSet z;
  z.x_side = std::move(x_side);
  z.y_side = std::move(y_side);
  return z;
}

TensorExtremeSet dual_pairing_tensor_set(const NormSpec& spec, std::uint64_t seed,
                                         int sample_count) {
  // Row side: dual-ball extremes; column side: primal-ball extremes.  Distinct
  // prime blocks keep the two samplers independent.
  return tensor_extreme_set(extreme_points(dual(spec), seed, sample_count, 0),
                            extreme_points(spec, seed, sample_count, 2 * spec.d));
}

double bilinear_norm(const Eigen::MatrixXd& theta, const TensorExtremeSet& z) {
  if (z.x_side.size() == 0 || z.y_side.size() == 0)
    throw std::invalid_argument("bilinear_norm: empty extreme set");
  if (theta.rows() != z.x_side.points.rows() || theta.cols() != z.y_side.points.rows())
    throw std::invalid_argument("bilinear_norm: matrix shape does not match the tensor set");

  constexpr Eigen::Index kBlock = 2048;
  double best = 0.0;
  if (z.finite()) {
    const Eigen::MatrixXd& xs = z.x_side.points;
    const Eigen::MatrixXd& ys = z.y_side.points;
    for (Eigen::Index j0 = 0; j0 < ys.cols(); j0 += kBlock) {
      const Eigen::Index nj = std::min(kBlock, ys.cols() - j0);
      const Eigen::MatrixXd ty = theta * ys.middleCols(j0, nj);
      for (Eigen::Index i0 = 0; i0 < xs.cols(); i0 += kBlock) {
        const Eigen::Index ni = std::min(kBlock, xs.cols() - i0);
        best = std::max(best,
                        (xs.middleCols(i0, ni).transpose() * ty).cwiseAbs().maxCoeff());
      }
    }
    return best;
  }

  // Sampled set: elements are index-aligned pairs.
  const std::int64_t n = z.size();
  const Eigen::Index dx = theta.rows();
  const Eigen::Index dy = theta.cols();
  Eigen::MatrixXd xp(dx, kBlock), yp(dy, kBlock);
  Eigen::VectorXd x, y;
  for (std::int64_t k0 = 0; k0 < n; k0 += kBlock) {
    const Eigen::Index nk = static_cast<Eigen::Index>(std::min<std::int64_t>(kBlock, n - k0));
    for (Eigen::Index j = 0; j < nk; ++j) {
      z.pair(k0 + j, x, y);
      xp.col(j) = x;
      yp.col(j) = y;
    }
    const Eigen::MatrixXd w = theta * yp.leftCols(nk);
    best = std::max(best, (xp.leftCols(nk).cwiseProduct(w)).colwise().sum().cwiseAbs().maxCoeff());
  }
  return best;
}

double max_l1_on_sphere(const NormSpec& spec) {
  if (spec.p == 1.0) return 1.0;
  if (spec.is_inf()) return static_cast<double>(spec.d);
  return std::pow(static_cast<double>(spec.d), 1.0 - 1.0 / spec.p);
}

double l1_mass_envelope(const TensorExtremeSet& z) {
  const auto side_mass = [](const ExtremePointSet& side) {
    if (side.finite) return side.points.cwiseAbs().colwise().sum().maxCoeff();
    return max_l1_on_sphere(side.spec);
  };
  return side_mass(z.x_side) * side_mass(z.y_side);
}

}  // namespace martnorm
