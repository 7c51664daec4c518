#include "nisbound/distance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nisbound/errors.hpp"
#include "nisbound/fourier.hpp"

namespace nisbound {

namespace {

void require_same_dim(const BinaryCode& a, const BinaryCode& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

double pair_count(const BinaryCode& a, const BinaryCode& b) {
  return static_cast<double>(a.size()) * static_cast<double>(b.size());
}

// Horner evaluation of sum_i c[i] z^i.
double poly(const std::vector<double>& c, double z) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// g(x) = x ln x - (x - 1), evaluated as a function of h = x - 1 so that the
// O(h) terms never cancel numerically.
double entropy_gap(double h) {
  if (std::abs(h) < 0.1) {
    // sum_{k>=2} (-1)^k h^k / (k (k-1))
    double term = h * h;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      sum += ((k & 1) ? -term : term) / (static_cast<double>(k) * (k - 1));
      term *= h;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double x = 1.0 + h;
  return x * std::log(x) - h;
}

// Golden-section minimization of f on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, f(lo), f(hi)});
}

}  // namespace

std::vector<std::uint64_t> distance_counts_pairwise(const BinaryCode& a, const BinaryCode& b) {
  require_same_dim(a, b);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(a.dim()) + 1, 0);
  for (Word x : a.words()) {
    for (Word y : b.words()) ++counts[static_cast<std::size_t>(hamming_distance(x, y))];
  }
  return counts;
}

std::vector<std::uint64_t> distance_counts_transform(const BinaryCode& a, const BinaryCode& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  if (n > kMaxTableDim) {
    throw DomainError("distance_counts_transform: dimension exceeds " +
                      std::to_string(kMaxTableDim));
  }
  // r(z) = #{(x, y) in A x B : x ^ y = z} is the XOR correlation of the two
  // indicators. Unnormalized WHT of each, pointwise product, WHT again gives
  // 2^n r(z) < 2^64, so wrapping arithmetic is exact.
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint64_t> ta(size, 0);
  std::vector<std::uint64_t> tb(size, 0);
  for (Word w : a.words()) ta[w] = 1;
  for (Word w : b.words()) tb[w] = 1;
  walsh_hadamard(std::span<std::uint64_t>(ta));
  walsh_hadamard(std::span<std::uint64_t>(tb));
  for (std::size_t i = 0; i < size; ++i) ta[i] *= tb[i];
  walsh_hadamard(std::span<std::uint64_t>(ta));
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t z = 0; z < size; ++z) counts[std::popcount(z)] += ta[z] >> n;
  return counts;
}

std::vector<std::uint64_t> distance_counts(const BinaryCode& a, const BinaryCode& b) {
  require_same_dim(a, b);
  const auto pairs = static_cast<std::uint64_t>(a.size()) * b.size();
  if (pairs <= kPairwiseLimit || a.dim() > kMaxTableDim) {
    return distance_counts_pairwise(a, b);
  }
  return distance_counts_transform(a, b);
}

DistanceDistribution to_distribution(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw DomainError("to_distribution: need n >= 1");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0.0) throw DomainError("to_distribution: no pairs");
  DistanceDistribution out{static_cast<int>(counts.size()) - 1, {}};
  out.p.reserve(counts.size());
  for (auto c : counts) out.p.push_back(static_cast<double>(c) / total);
  return out;
}

DistanceDistribution distance_distribution(const BinaryCode& a, const BinaryCode& b) {
  return to_distribution(distance_counts(a, b));
}

double distance_moment(const DistanceDistribution& dist, int k) {
  if (k < 0) throw DomainError("distance_moment: negative order");
  double sum = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    sum += dist.p[i] * std::pow(static_cast<double>(i), k);
  }
  return sum;
}

double average_distance(const BinaryCode& a, const BinaryCode& b) {
  return distance_moment(distance_distribution(a, b), 1);
}

double distance_enumerator(const DistanceDistribution& dist, double z) {
  if (!(z >= 0.0)) throw DomainError("distance_enumerator: z must be >= 0");
  return poly(dist.p, z);
}

DualDistribution dual_distribution(const BinaryCode& a, const BinaryCode& b) {
  require_same_dim(a, b);
  const LevelSums levels = level_sums(spectrum(a), spectrum(b));
  const double scale = 4.0 * a.density() * b.density();
  DualDistribution out{a.dim(), std::vector<double>(levels.s.size())};
  out.q[0] = 1.0;
  for (std::size_t k = 1; k < levels.s.size(); ++k) out.q[k] = levels.s[k] / scale;
  return out;
}

DualDistribution dual_distribution_character_sum(const BinaryCode& a, const BinaryCode& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  if (n > 16) throw DomainError("dual_distribution_character_sum: dimension exceeds 16");
  auto char_sum = [](const BinaryCode& code, Word u) {
    long long s = 0;
    for (Word x : code.words()) s += (std::popcount(u & x) & 1) ? -1 : 1;
    return static_cast<double>(s);
  };
  DualDistribution out{n, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  for (Word u = 0; u < (Word{1} << n); ++u) {
    out.q[std::popcount(u)] += char_sum(a, u) * char_sum(b, u);
  }
  const double norm = pair_count(a, b);
  for (double& v : out.q) v /= norm;
  return out;
}

double dual_enumerator(const DualDistribution& dual, double z) {
  if (!(z >= 0.0)) throw DomainError("dual_enumerator: z must be >= 0");
  return poly(dual.q, z);
}

double dual_enumerator_from_distance(const DistanceDistribution& dist, double z) {
  // (1+z)^n Gamma_{(1-z)/(1+z)} = sum_i p(i) (1-z)^i (1+z)^{n-i}
  double sum = 0.0;
  for (std::size_t i = 0; i < dist.p.size(); ++i) {
    sum += dist.p[i] * std::pow(1.0 - z, static_cast<double>(i)) *
           std::pow(1.0 + z, static_cast<double>(dist.n) - static_cast<double>(i));
  }
  return sum;
}

double distance_enumerator_from_dual(const DualDistribution& dual, double z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < dual.q.size(); ++i) {
    sum += dual.q[i] * std::pow(1.0 - z, static_cast<double>(i)) *
           std::pow(1.0 + z, static_cast<double>(dual.n) - static_cast<double>(i));
  }
  return sum * std::ldexp(1.0, -dual.n);
}

IdentitySides macwilliams_forward(const BinaryCode& a, const BinaryCode& b, double z) {
  if (!(z >= 0.0)) throw DomainError("macwilliams_forward: z must be >= 0");
  const auto dual = dual_distribution(a, b);
  const auto dist = distance_distribution(a, b);
  const double w = (1.0 - z) / (1.0 + z);
  // Gamma at a possibly negative argument: evaluate the polynomial directly.
  return {dual_enumerator(dual, z), std::pow(1.0 + z, a.dim()) * poly(dist.p, w)};
}

IdentitySides macwilliams_inverse(const BinaryCode& a, const BinaryCode& b, double z) {
  if (!(z >= 0.0)) throw DomainError("macwilliams_inverse: z must be >= 0");
  const auto dual = dual_distribution(a, b);
  const auto dist = distance_distribution(a, b);
  const double w = (1.0 - z) / (1.0 + z);
  return {distance_enumerator(dist, z), std::pow((1.0 + z) / 2.0, a.dim()) * poly(dual.q, w)};
}

double fwy_lower_bound(int n, double a) {
  if (!(a > 0.0 && a <= 0.5)) throw DomainError("fwy_lower_bound: a must lie in (0, 1/2]");
  return std::max(0.0, n / 2.0 - 1.0 / (4.0 * a));
}

AvgDistanceBounds cross_distance_bounds(int n, double a, double b) {
  if (!(a > 0.0 && a <= 1.0) || !(b > 0.0 && b <= 1.0)) {
    throw DomainError("cross_distance_bounds: a and b must lie in (0, 1]");
  }
  const double dev =
      std::sqrt(std::min(a, 1.0 - a) * std::min(b, 1.0 - b)) / (4.0 * a * b);
  const double half = n / 2.0;
  return {n, a, b, std::max(0.0, half - dev), std::min(static_cast<double>(n), half + dev)};
}

double chang_bound(int n, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("chang_bound: a must lie in (0, 1]");
  return std::max(0.0, n / 2.0 - std::log(1.0 / a));
}

double psi_objective(double a, double t) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("psi_objective: a must lie in (0, 1)");
  if (!(t > 0.0)) throw DomainError("psi_objective: t must be > 0");
  if (t == 1.0) return (1.0 - a) / (2.0 * a);
  const double eps = t - 1.0;
  const double m = 1.0 + a * eps;  // ta + (1 - a)
  // a t ln t - m ln m = a g(t) - g(m) since the linear parts cancel exactly.
  const double bracket = a * entropy_gap(eps) - entropy_gap(a * eps);
  return m * bracket / (a * a * eps * eps);
}

double psi(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("psi: a must lie in (0, 1)");
  constexpr double kSpan = 14.0;
  constexpr double kTol = 1e-10;
  auto in_log = [a](double u) { return psi_objective(a, u == 0.0 ? 1.0 : std::exp(u)); };
  const double left = golden_min(in_log, -kSpan, 0.0, kTol);
  const double right = golden_min(in_log, 0.0, kSpan, kTol);
  return std::min({left, right, psi_objective(a, 1.0)});
}

double psi_bound(int n, double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("psi_bound: a must lie in (0, 1]");
  if (a == 1.0) return n / 2.0;
  return std::max(0.0, n / 2.0 - psi(a));
}

}  // namespace nisbound
