#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nisbound/hypercube.hpp"

namespace nisbound {

/// In-place unnormalized Walsh-Hadamard butterfly over a table of 2^n
/// entries. Applying it twice scales the table by 2^n.
void walsh_hadamard(std::span<double> table);

/// Same butterfly in wrapping 64-bit arithmetic. Results are exact modulo
/// 2^64, so any final value known to lie in (-2^63, 2^63) is exact.
void walsh_hadamard(std::span<std::uint64_t> table);

/// Fourier coefficients of f = 2*1_A - 1, normalized as expectations:
/// coeffs[S] = E[f(X) chi_S(X)] with bit i of S set <=> i in S.
struct FourierSpectrum {
  int n = 0;
  double density = 0.0;  // a = |A| / 2^n
  std::vector<double> coeffs;

  double operator[](Word subset) const { return coeffs[subset]; }
};

FourierSpectrum spectrum(const BinaryCode& code);

/// s[k] = sum over |S| = k of F_S * G_S.
struct LevelSums {
  int n = 0;
  std::vector<double> s;
};

LevelSums level_sums(const FourierSpectrum& f, const FourierSpectrum& g);

/// (1/4) * sum_{k>=1} s[k] rho^k, the correlation excess q - ab.
double theta_from_levels(const LevelSums& levels, double rho);

/// Split of the level >= 2 products by sign, each scaled by 1/4:
/// tau_plus sums the nonnegative F_S G_S, tau_minus the negative ones.
/// Diagnostic only.
struct PartitionSums {
  double tau_plus = 0.0;
  double tau_minus = 0.0;
};

PartitionSums partition_sums(const FourierSpectrum& f, const FourierSpectrum& g);

}  // namespace nisbound
