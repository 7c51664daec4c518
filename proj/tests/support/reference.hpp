#pragma once

// Slow reference computations and seeded generators for the test suites.
// Everything here works on explicit +/-1 coordinate vectors so it shares no
// code path with the library under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "nisbound/hypercube.hpp"

namespace ref {

using nisbound::BinaryCode;
using nisbound::Word;

inline std::vector<int> signs(Word w, int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = ((w >> i) & 1U) ? 1 : -1;
  return x;
}

inline int distance(Word u, Word v, int n) {
  const auto x = signs(u, n);
  const auto y = signs(v, n);
  int d = 0;
  for (int i = 0; i < n; ++i) d += x[i] != y[i];
  return d;
}

inline std::vector<double> distance_pmf(const BinaryCode& a, const BinaryCode& b) {
  const int n = a.dim();
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  for (Word x : a.words()) {
    for (Word y : b.words()) p[distance(x, y, n)] += 1.0;
  }
  for (double& v : p) v /= static_cast<double>(a.size() * b.size());
  return p;
}

inline double avg_distance(const BinaryCode& a, const BinaryCode& b) {
  const auto p = distance_pmf(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<double>(i) * p[i];
  return s;
}

// P(f(X) = g(Y) = 1) summed over the joint law coordinate by coordinate.
inline double collision(const BinaryCode& a, const BinaryCode& b, double rho) {
  const int n = a.dim();
  double q = 0.0;
  for (Word x : a.words()) {
    const auto xs = signs(x, n);
    for (Word y : b.words()) {
      const auto ys = signs(y, n);
      double p = 1.0;
      for (int i = 0; i < n; ++i) p *= (1.0 + xs[i] * ys[i] * rho) / 4.0;
      q += p;
    }
  }
  return q;
}

// E[f chi_S] for f = 2*1_A - 1.
inline double fourier(const BinaryCode& a, Word subset) {
  const int n = a.dim();
  double s = 0.0;
  for (Word x = 0; x < (Word{1} << n); ++x) {
    const auto xs = signs(x, n);
    const double f = a.contains(x) ? 1.0 : -1.0;
    double chi = 1.0;
    for (int i = 0; i < n; ++i) {
      if ((subset >> i) & 1U) chi *= xs[i];
    }
    s += f * chi;
  }
  return s / std::ldexp(1.0, n);
}

// Character-sum definition over u in {0,1}^n, codewords mapped to {0,1}.
inline std::vector<double> dual_pmf(const BinaryCode& a, const BinaryCode& b) {
  const int n = a.dim();
  std::vector<double> q(static_cast<std::size_t>(n) + 1, 0.0);
  auto char_sum = [n](const BinaryCode& c, Word u) {
    double s = 0.0;
    for (Word x : c.words()) {
      int parity = 0;
      for (int i = 0; i < n; ++i) parity ^= static_cast<int>((u >> i) & (x >> i) & 1U);
      s += parity ? -1.0 : 1.0;
    }
    return s;
  };
  for (Word u = 0; u < (Word{1} << n); ++u) {
    int w = 0;
    for (int i = 0; i < n; ++i) w += static_cast<int>((u >> i) & 1U);
    q[w] += char_sum(a, u) * char_sum(b, u);
  }
  for (double& v : q) v /= static_cast<double>(a.size() * b.size());
  return q;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---- generators ------------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Random code of size in [lo, hi] (clamped to [1, 2^n]).
  BinaryCode code(int n, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t size = uniform(std::max<std::uint64_t>(1, lo), std::min(hi, total));
    std::vector<Word> all(total);
    for (Word w = 0; w < total; ++w) all[w] = w;
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(size);
    return nisbound::make_code(n, all);
  }
  // Proper nonempty subset, so the complement exists.
  BinaryCode proper_code(int n) { return code(n, 1, (std::uint64_t{1} << n) - 1); }

  nisbound::CubeSymmetry symmetry(int n) {
    nisbound::CubeSymmetry g = nisbound::CubeSymmetry::identity(n);
    std::shuffle(g.perm.begin(), g.perm.end(), rng_);
    g.flips = uniform(0, (std::uint64_t{1} << n) - 1);
    return g;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ref
