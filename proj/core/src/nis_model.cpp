#include "nisbound/nis_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nisbound/distance.hpp"
#include "nisbound/errors.hpp"
#include "nisbound/fourier.hpp"

namespace nisbound {

namespace {

void check_rho(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("correlation must satisfy |rho| <= 1");
}

double checked_clamp(double v, double lo, double hi, const char* what) {
  if (v < lo - kProbabilitySlack || v > hi + kProbabilitySlack) {
    throw NumericalError(std::string(what) + ": value " + std::to_string(v) +
                         " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return std::clamp(v, lo, hi);
}

}  // namespace

DsbsInstance::DsbsInstance(double rho, int n) : rho_(rho), n_(n) {
  check_rho(rho);
  if (n < 1) throw DomainError("DsbsInstance: blocklength must be >= 1");
}

double DsbsInstance::pair_probability(int d) const {
  return std::pow((1.0 - rho_) / 4.0, d) * std::pow((1.0 + rho_) / 4.0, n_ - d);
}

double collision_from_counts(std::span<const std::uint64_t> counts, double rho) {
  check_rho(rho);
  const int n = static_cast<int>(counts.size()) - 1;
  const DsbsInstance source(rho, n);
  double sum = 0.0;
  for (int d = 0; d <= n; ++d) {
    if (counts[d] != 0) sum += static_cast<double>(counts[d]) * source.pair_probability(d);
  }
  return sum;
}

CollisionPaths collision_paths(const BinaryCode& a, const BinaryCode& b, double rho) {
  check_rho(rho);
  if (a.dim() != b.dim()) throw DomainError("collision_paths: dimension mismatch");
  const int n = a.dim();
  const double ab = a.density() * b.density();

  CollisionPaths out;
  const auto counts = distance_counts(a, b);
  if (rho == -1.0) {
    // z = (1-rho)/(1+rho) diverges; sum the pair probabilities directly.
    out.distance_path = collision_from_counts(counts, rho);
  } else {
    const double z = (1.0 - rho) / (1.0 + rho);
    out.distance_path =
        ab * std::pow(1.0 + rho, n) * distance_enumerator(to_distribution(counts), z);
  }

  if (n <= kMaxTableDim) {
    const LevelSums levels = level_sums(spectrum(a), spectrum(b));
    out.spectral_path = ab + theta_from_levels(levels, rho);
  } else {
    out.spectral_path = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double collision_prob(const BinaryCode& a, const BinaryCode& b, double rho) {
  const CollisionPaths paths = collision_paths(a, b, rho);
  if (!std::isnan(paths.spectral_path) &&
      std::abs(paths.distance_path - paths.spectral_path) > kPathAgreementTol) {
    throw NumericalError("collision_prob: distance and spectral routes disagree (" +
                         std::to_string(paths.distance_path) + " vs " +
                         std::to_string(paths.spectral_path) + ")");
  }
  return checked_clamp(paths.distance_path, 0.0, std::min(a.density(), b.density()),
                       "collision_prob");
}

JointCellProbs joint_cells(const BinaryCode& a, const BinaryCode& b, double rho) {
  const double q = collision_prob(a, b, rho);
  const double pa = a.density();
  const double pb = b.density();
  JointCellProbs out{pa, pb, q, pa - q, pb - q, 1.0 - pa - pb + q};
  out.q_pm = checked_clamp(out.q_pm, 0.0, 1.0, "joint_cells");
  out.q_mp = checked_clamp(out.q_mp, 0.0, 1.0, "joint_cells");
  out.q_mm = checked_clamp(out.q_mm, 0.0, 1.0, "joint_cells");
  return out;
}

DyadicRounding dyadic_round(double target, int n) {
  if (!(target >= 0.0 && target <= 1.0)) throw DomainError("dyadic_round: target outside [0, 1]");
  if (n < 0 || n > 62) throw DomainError("dyadic_round: n outside [0, 62]");
  const double scale = std::ldexp(1.0, n);
  const double rounded = std::floor(target * scale) / scale;
  return {rounded, target - rounded};
}

}  // namespace nisbound
