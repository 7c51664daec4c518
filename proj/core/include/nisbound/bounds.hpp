#pragma once

#include <string>
#include <vector>

namespace nisbound {

// ---- instance normalization -------------------------------------------------

/// Affine relation q_original = offset + sign * q_normalized accumulated while
/// reducing an instance to a <= b <= 1/2 and rho >= 0.
struct TransformRecord {
  bool negate_x = false;      // rho -> -rho by replacing X with -X; q unchanged
  bool complement_f = false;  // a -> 1 - a; q -> b - q
  bool complement_g = false;  // b -> 1 - b; q -> a - q
  bool swapped = false;       // (a, b) -> (b, a); q unchanged
  double offset = 0.0;
  double sign = 1.0;

  double to_original(double q_normalized) const { return offset + sign * q_normalized; }
  /// Maps an interval [lo, hi] in normalized coordinates; endpoints swap
  /// when sign is negative.
  void to_original(double lo, double hi, double& out_lo, double& out_hi) const;
  std::vector<std::string> steps() const;
};

struct NormalizedInstance {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  TransformRecord record;
};

/// a, b in [0, 1], |rho| <= 1. Result satisfies a <= b <= 1/2, rho in [0, 1].
NormalizedInstance normalize_instance(double a, double b, double rho);

// ---- closed-form families ---------------------------------------------------

struct Interval {
  double lb = 0.0;
  double ub = 0.0;
};

struct UpsilonBounds {
  double lb1 = 0.0;
  double lb2 = 0.0;
  double ub1 = 0.0;
  double ub2 = 0.0;

  double lower() const { return lb1 > lb2 ? lb1 : lb2; }
  double upper() const { return ub1 < ub2 ? ub1 : ub2; }
};

double theta_plus(double t, double rho);
double theta_minus(double t, double rho);

/// Requires a normalized instance (0 <= a <= b <= 1/2, 0 <= rho <= 1);
/// throws DomainError otherwise.
UpsilonBounds theorem1_bounds(double a, double b, double rho);

/// [theta_minus(a), theta_plus(a)] for a = b in (0, 1/2], rho in [0, 1].
Interval symmetric_bounds(double a, double rho);

/// ab -/+ sqrt(a(1-a)b(1-b)) rho, clamped to [0, min(a, b)].
Interval maximal_correlation_bounds(double a, double b, double rho);

// ---- hypercontractivity -----------------------------------------------------

struct HcOptimizerConfig {
  int grid_points = 33;        // per axis, log-spaced
  int refine_iterations = 4000;  // pattern-search steps per start
  int refine_starts = 3;       // best grid points refined per orthant
  double exclusion = 1e-4;     // half-width in log space around s=1, t=1, kappa=1
  double tol = 1e-6;           // relative convergence tolerance
  double st_min = 1e-3;
  double st_max = 1e3;
  double kappa_min = 1e-3;
  double kappa_max = 1e3;
};

/// Throws DomainError if any field is non-positive or ranges are inverted.
void validate(const HcOptimizerConfig& cfg);

/// The objective phi_{a,b}(s, t, kappa) with kappa' = 1 + rho^2/(kappa - 1),
/// evaluated in log space. Returns NaN where it is undefined or overflows.
double hc_objective(double a, double b, double rho, double s, double t, double kappa);

struct HcPoint {
  double s = 1.0;
  double t = 1.0;
  double kappa = 1.0;
};

struct HcBounds {
  double lb = 0.0;
  double ub = 0.0;
  HcPoint lb_at;
  HcPoint ub_at;
  bool converged = true;
  bool wide_domain_warning = false;  // rho == 1: feasible region not characterized
  bool closed_form = false;          // endpoint handled without optimization
};

/// sup of phi over (s-1)(t-1)(kappa-1) < 0 and inf over > 0.
/// a, b in [0, 1], rho in [0, 1]. a or b in {0, 1} and rho = 0 are closed form.
HcBounds hc_bounds(double a, double b, double rho, const HcOptimizerConfig& cfg = {});

// ---- aggregate --------------------------------------------------------------

/// One bound value with its pre-clamp value and the formula that produced it.
struct BoundValue {
  double value = 0.0;
  double raw = 0.0;
  std::string source;
};

struct BoundsReport {
  // Caller's instance.
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  NormalizedInstance normalized;

  // All in original coordinates, clamped to [max(0, a+b-1), min(a, b)].
  BoundValue upsilon1_lb, upsilon2_lb, upsilon1_ub, upsilon2_ub;
  BoundValue mc_lb, mc_ub;
  BoundValue hc_lb, hc_ub;
  BoundValue combined_lb, combined_ub;
  bool hc_converged = true;
  bool hc_wide_domain_warning = false;
};

BoundsReport combined_report(double a, double b, double rho, const HcOptimizerConfig& cfg = {});

}  // namespace nisbound
