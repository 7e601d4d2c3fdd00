#pragma once

#include <cmath>
#include <cstdint>

namespace martnorm {

// 64-bit finalizer with full avalanche (splitmix64's mixing function).
constexpr std::uint64_t avalanche64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t golden64 = 0x9e3779b97f4a7c15ull;

// Derive a stream key from a master seed plus up to three stream coordinates
// (e.g. path, step, entry).  Chained avalanches decorrelate nearby tuples.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0,
                                   std::uint64_t c = 0) noexcept {
  std::uint64_t k = avalanche64(seed + golden64);
  k = avalanche64((k ^ a) + 0xd1b54a32d192ed03ull);
  k = avalanche64((k ^ b) + 0x8cb92ba72f3d8dd7ull);
  k = avalanche64((k ^ c) + 0x2545f4914f6cdd1dull);
  return k;
}

// Counter-mode generator: the i-th draw is a pure function of (key, i).
// A stream keyed by (seed, path, step, entry) therefore produces identical
// numbers no matter which thread evaluates it or how work is scheduled.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : state_(key) {}

  std::uint64_t next_u64() noexcept {
    state_ += golden64;
    return avalanche64(state_);
  }

  // uniform on [0,1), 53 bits
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on (0,1); safe to pass to log()
  double next_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller pair; rejection-free, so every entry consumes a fixed number
  // of draws and streams never slip out of alignment.
  void gaussian_pair(double& g0, double& g1) noexcept {
    const double u = next_open();
    const double v = next_double();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double th = 6.283185307179586476925286766559 * v;
    g0 = r * std::cos(th);
    g1 = r * std::sin(th);
  }

  double gaussian() noexcept {
    double a, b;
    gaussian_pair(a, b);
    return a;
  }

 private:
  std::uint64_t state_;
};

inline CounterRng entry_stream(std::uint64_t seed, std::uint64_t path,
                               std::uint64_t step,
                               std::uint64_t entry) noexcept {
  return CounterRng(stream_key(seed, path, step, entry));
}

// Van der Corput radical inverse in the given (prime) base.
inline double radical_inverse(std::uint64_t i, std::uint32_t base) noexcept {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (i) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// k-th prime (k = 0 gives 2); supports the Halton dimensions used here.
std::uint32_t nth_prime(std::size_t k);

}  // namespace martnorm
