#include "nisbound/fourier.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "nisbound/errors.hpp"

namespace nisbound {

namespace {

template <typename T>
void butterfly(std::span<T> table) {
  const std::size_t size = table.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw DomainError("walsh_hadamard: table size must be a power of two");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) {
        const T u = table[j];
        const T v = table[j + half];
        table[j] = u + v;
        table[j + half] = u - v;
      }
    }
  }
}

void require_same_dim(const FourierSpectrum& f, const FourierSpectrum& g) {
  if (f.n != g.n) {
    throw DomainError("spectra of different dimensions: " + std::to_string(f.n) +
                      " vs " + std::to_string(g.n));
  }
}

}  // namespace

void walsh_hadamard(std::span<double> table) { butterfly(table); }
void walsh_hadamard(std::span<std::uint64_t> table) { butterfly(table); }

FourierSpectrum spectrum(const BinaryCode& code) {
  const int n = code.dim();
  if (n > kMaxTableDim) {
    throw DomainError("spectrum: dimension " + std::to_string(n) + " exceeds " +
                      std::to_string(kMaxTableDim));
  }
  const std::size_t size = std::size_t{1} << n;
  FourierSpectrum out{n, code.density(), std::vector<double>(size, -1.0)};
  for (Word w : code.words()) out.coeffs[w] = 1.0;
  walsh_hadamard(std::span<double>(out.coeffs));
  // chi_S(x) = prod_{i in S} x_i = (-1)^{|S|} (-1)^{<S, bits(x)>}; the butterfly
  // computes the second factor.
  const double scale = std::ldexp(1.0, -n);
  for (std::size_t s = 0; s < size; ++s) {
    out.coeffs[s] *= (std::popcount(s) & 1) ? -scale : scale;
  }
  return out;
}

LevelSums level_sums(const FourierSpectrum& f, const FourierSpectrum& g) {
  require_same_dim(f, g);
  LevelSums out{f.n, std::vector<double>(static_cast<std::size_t>(f.n) + 1, 0.0)};
  for (std::size_t s = 0; s < f.coeffs.size(); ++s) {
    out.s[std::popcount(s)] += f.coeffs[s] * g.coeffs[s];
  }
  return out;
}

double theta_from_levels(const LevelSums& levels, double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("theta_from_levels: |rho| > 1");
  // Horner over k = n..1.
  double acc = 0.0;
  for (std::size_t k = levels.s.size() - 1; k >= 1; --k) {
    acc = (acc + levels.s[k]) * rho;
  }
  return 0.25 * acc;
}

PartitionSums partition_sums(const FourierSpectrum& f, const FourierSpectrum& g) {
  require_same_dim(f, g);
  PartitionSums out;
  for (std::size_t s = 0; s < f.coeffs.size(); ++s) {
    if (std::popcount(s) < 2) continue;
    const double prod = f.coeffs[s] * g.coeffs[s];
    if (prod >= 0.0) {
      out.tau_plus += prod;
    } else {
      out.tau_minus += prod;
    }
  }
  out.tau_plus *= 0.25;
  out.tau_minus *= 0.25;
  return out;
}

}  // namespace nisbound
