#pragma once

#include <cstdint>
#include <span>

#include "nisbound/hypercube.hpp"

namespace nisbound {

/// n i.i.d. copies of a doubly symmetric binary source with correlation rho:
/// P(X=x, Y=y) = (1 + x y rho) / 4 on {-1,1}^2.
class DsbsInstance {
 public:
  DsbsInstance(double rho, int n);

  double rho() const { return rho_; }
  int n() const { return n_; }

  double marginal_joint(int x, int y) const { return (1.0 + x * y * rho_) / 4.0; }
  /// P(X = x, Y = y) for x, y at Hamming distance d.
  double pair_probability(int d) const;

 private:
  double rho_;
  int n_;
};

/// The four cells of (f(X), g(Y)) with a = P(f = 1), b = P(g = 1).
struct JointCellProbs {
  double a = 0.0;
  double b = 0.0;
  double q_pp = 0.0;
  double q_pm = 0.0;
  double q_mp = 0.0;
  double q_mm = 0.0;
};

struct CollisionPaths {
  double distance_path = 0.0;  // ab (1+rho)^n Gamma_{(1-rho)/(1+rho)}(A,B)
  double spectral_path = 0.0;  // ab + theta_rho; NaN when n > 24
};

// The two routes must agree to this absolute tolerance.
inline constexpr double kPathAgreementTol = 1e-9;
// Slack tolerated outside [0, min(a,b)] before raising NumericalError.
inline constexpr double kProbabilitySlack = 1e-12;

/// q = P(f(X) = g(Y) = 1) for f, g the +/-1 indicators of A, B, computed by
/// both routes without cross-checking.
CollisionPaths collision_paths(const BinaryCode& a, const BinaryCode& b, double rho);

/// q checked across both routes (n <= 24) and clamped into [0, min(a, b)].
/// Throws DomainError on bad inputs and NumericalError if the routes disagree
/// or the value leaves its sandwich by more than rounding slack.
double collision_prob(const BinaryCode& a, const BinaryCode& b, double rho);

/// Distance route from precomputed pair counts (sizes implied by the counts).
double collision_from_counts(std::span<const std::uint64_t> counts, double rho);

JointCellProbs joint_cells(const BinaryCode& a, const BinaryCode& b, double rho);

struct DyadicRounding {
  double rounded = 0.0;  // floor(2^n target) / 2^n
  double gap = 0.0;      // target - rounded, in [0, 2^-n)
};

DyadicRounding dyadic_round(double target, int n);

}  // namespace nisbound
