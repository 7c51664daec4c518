#include "nisbound/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "nisbound/errors.hpp"

namespace nisbound {

namespace {

constexpr double kNormalizedSlack = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

// ---- normalization -----------------------------------------------------------

void TransformRecord::to_original(double lo, double hi, double& out_lo, double& out_hi) const {
  const double x = to_original(lo);
  const double y = to_original(hi);
  out_lo = std::min(x, y);
  out_hi = std::max(x, y);
}

std::vector<std::string> TransformRecord::steps() const {
  std::vector<std::string> out;
  if (negate_x) out.emplace_back("negate_x");
  if (complement_f) out.emplace_back("complement_f");
  if (complement_g) out.emplace_back("complement_g");
  if (swapped) out.emplace_back("swap");
  return out;
}

NormalizedInstance normalize_instance(double a, double b, double rho) {
  check_unit(a, "a");
  check_unit(b, "b");
  if (!(std::abs(rho) <= 1.0)) throw DomainError("rho must satisfy |rho| <= 1");

  NormalizedInstance out{a, b, rho, {}};
  TransformRecord& rec = out.record;
  if (out.rho < 0.0) {
    out.rho = -out.rho;
    rec.negate_x = true;
  }
  if (out.a > 0.5) {
    // P(f=1, g=1) = P(g=1) - P(-f=1, g=1)
    rec.offset += rec.sign * out.b;
    rec.sign = -rec.sign;
    out.a = 1.0 - out.a;
    rec.complement_f = true;
  }
  if (out.b > 0.5) {
    rec.offset += rec.sign * out.a;
    rec.sign = -rec.sign;
    out.b = 1.0 - out.b;
    rec.complement_g = true;
  }
  if (out.a > out.b) {
    std::swap(out.a, out.b);
    rec.swapped = true;
  }
  return out;
}

// ---- closed forms ------------------------------------------------------------

double theta_plus(double t, double rho) {
  return t * t + (t / 2.0) * rho + (t / 2.0 - t * t) * rho * rho;
}

double theta_minus(double t, double rho) {
  return std::max(0.0, t * t - (t / 2.0) * rho - (t / 2.0 - t * t) * rho * rho);
}

UpsilonBounds theorem1_bounds(double a, double b, double rho) {
  if (!(a >= 0.0 && a <= b + kNormalizedSlack && b <= 0.5 + kNormalizedSlack)) {
    throw DomainError("theorem1_bounds: instance not normalized (need 0 <= a <= b <= 1/2)");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw DomainError("theorem1_bounds: instance not normalized (need rho in [0, 1])");
  }
  const double ab = a * b;
  const double r = std::sqrt(ab);
  const double m = std::sqrt(a * (1.0 - a) * b * (1.0 - b));
  const double rho2 = rho * rho;
  UpsilonBounds out;
  out.lb1 = std::max(0.0, ab - r / 2.0 * rho - (ab + m) / 2.0 * rho2);
  out.lb2 = std::max(0.0, ab - r / 2.0 * rho - (a + b - 2.0 * ab - r) / 2.0 * rho2);
  out.ub1 = std::min(a, ab + r / 2.0 * rho + (a * (1.0 - b) + m - r) / 2.0 * rho2);
  out.ub2 = std::sqrt(theta_plus(a, rho) * theta_plus(b, rho));
  return out;
}

Interval symmetric_bounds(double a, double rho) {
  if (!(a > 0.0 && a <= 0.5)) throw DomainError("symmetric_bounds: a must lie in (0, 1/2]");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("symmetric_bounds: rho must lie in [0, 1]");
  return {theta_minus(a, rho), theta_plus(a, rho)};
}

Interval maximal_correlation_bounds(double a, double b, double rho) {
  check_unit(a, "a");
  check_unit(b, "b");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("maximal_correlation_bounds: rho must lie in [0, 1]");
  const double ab = a * b;
  const double dev = std::sqrt(a * (1.0 - a) * b * (1.0 - b)) * rho;
  const double hi = std::min(a, b);
  return {std::clamp(ab - dev, 0.0, hi), std::clamp(ab + dev, 0.0, hi)};
}

// ---- hypercontractivity ------------------------------------------------------

void validate(const HcOptimizerConfig& cfg) {
  const bool ok = cfg.grid_points >= 2 && cfg.refine_iterations > 0 && cfg.refine_starts > 0 &&
                  cfg.exclusion > 0.0 && cfg.tol > 0.0 && cfg.st_min > 0.0 &&
                  cfg.st_min < 1.0 && cfg.st_max > 1.0 && cfg.kappa_min > 0.0 &&
                  cfg.kappa_min < 1.0 && cfg.kappa_max > 1.0;
  if (!ok) throw DomainError("invalid hypercontractivity optimizer configuration");
}

namespace {

// log(a e^x + 1 - a). The log1p form keeps full relative accuracy near
// x = 0; the shifted form only takes over where e^x could overflow.
double log_mix(double a, double x) {
  if (x > 30.0) return x + std::log(a + (1.0 - a) * std::exp(-x));
  return std::log1p(a * std::expm1(x));
}

// log of the p-norm (a s^p + 1 - a)^(1/p) with s = e^sigma; p -> 0 limit a*sigma.
double log_norm(double a, double sigma, double p) {
  if (p == 0.0) return a * sigma;
  return log_mix(a, p * sigma) / p;
}

// phi in log coordinates sigma = ln s, tau = ln t.
double phi_log(double a, double b, double rho, double sigma, double tau, double kappa) {
  const double kappa_prime = 1.0 + rho * rho / (kappa - 1.0);
  const double log_norms = log_norm(a, sigma, kappa_prime) + log_norm(b, tau, kappa);
  const double ds = std::expm1(sigma);
  const double dt = std::expm1(tau);
  const double num = std::expm1(log_norms) - a * ds - b * dt;
  const double v = num / (ds * dt);
  return std::isfinite(v) ? v : kNaN;
}

// One sign orthant of (s - 1, t - 1, kappa - 1). Coordinates are
// x_i = ln|.| of the distance from the singular hyperplane in each axis.
struct Orthant {
  int s_sign;
  int t_sign;
  int k_sign;
};

struct AxisRange {
  double lo;  // log of smallest allowed distance
  double hi;
  double grid_lo;
};

class HcSearch {
 public:
  HcSearch(double a, double b, double rho, const HcOptimizerConfig& cfg, bool minimize)
      : a_(a), b_(b), rho_(rho), cfg_(cfg), minimize_(minimize) {}

  struct Outcome {
    double value;
    HcPoint at;
    bool converged;
  };

  Outcome run() {
    Outcome best{minimize_ ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity(),
                 {}, true};
    bool found = false;
    for (int s_sign : {-1, 1}) {
      for (int t_sign : {-1, 1}) {
        for (int k_sign : {-1, 1}) {
          const int product = s_sign * t_sign * k_sign;
          if ((product > 0) != minimize_) continue;
          const Outcome o = search_orthant({s_sign, t_sign, k_sign});
          if (std::isnan(o.value)) continue;
          found = true;
          best.converged = best.converged && o.converged;
          if (better(o.value, best.value) ||
              (o.value == best.value && lex_less(o.at, best.at))) {
            best.value = o.value;
            best.at = o.at;
          }
        }
      }
    }
    if (!found) throw ConvergenceError("hc_bounds: no finite objective value in the search box");
    return best;
  }

 private:
  static bool lex_less(const HcPoint& l, const HcPoint& r) {
    if (l.s != r.s) return l.s < r.s;
    if (l.t != r.t) return l.t < r.t;
    return l.kappa < r.kappa;
  }

  bool better(double v, double than) const { return minimize_ ? v < than : v > than; }

  std::array<AxisRange, 3> ranges(const Orthant& o) const {
    const double excl = std::log(cfg_.exclusion);
    const AxisRange s{excl, std::log(std::abs(std::log(o.s_sign > 0 ? cfg_.st_max : cfg_.st_min))),
                      excl};
    const AxisRange t{excl, std::log(std::abs(std::log(o.t_sign > 0 ? cfg_.st_max : cfg_.st_min))),
                      excl};
    // kappa - 1 in [kappa_min, kappa_max - 1] or 1 - kappa in [kappa_min, 1 - kappa_min].
    const double k_hi = o.k_sign > 0 ? cfg_.kappa_max - 1.0 : 1.0 - cfg_.kappa_min;
    const AxisRange k{excl, std::log(k_hi), std::log(cfg_.kappa_min)};
    return {s, t, k};
  }

  HcPoint to_point(const Orthant& o, const std::array<double, 3>& x) const {
    return {std::exp(o.s_sign * std::exp(x[0])), std::exp(o.t_sign * std::exp(x[1])),
            1.0 + o.k_sign * std::exp(x[2])};
  }

  double eval(const Orthant& o, const std::array<double, 3>& x) const {
    const double sigma = o.s_sign * std::exp(x[0]);
    const double tau = o.t_sign * std::exp(x[1]);
    const double kappa = 1.0 + o.k_sign * std::exp(x[2]);
    return phi_log(a_, b_, rho_, sigma, tau, kappa);
  }

  Outcome search_orthant(const Orthant& o) const {
    const auto axes = ranges(o);
    const int g = cfg_.grid_points;
    std::array<std::vector<double>, 3> grid;
    std::array<double, 3> spacing{};
    for (int i = 0; i < 3; ++i) {
      const double lo = std::max(axes[i].lo, axes[i].grid_lo);
      const double hi = axes[i].hi;
      spacing[i] = (hi - lo) / (g - 1);
      for (int j = 0; j < g; ++j) grid[i].push_back(lo + spacing[i] * j);
    }

    struct Cand {
      double value;
      std::array<double, 3> x;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(g) * g * g);
    for (double x0 : grid[0]) {
      for (double x1 : grid[1]) {
        for (double x2 : grid[2]) {
          const std::array<double, 3> x{x0, x1, x2};
          const double v = eval(o, x);
          if (!std::isnan(v)) cands.push_back({v, x});
        }
      }
    }
    if (cands.empty()) return {kNaN, {}, true};
    const std::size_t keep = std::min<std::size_t>(cands.size(), cfg_.refine_starts);
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                      [this](const Cand& l, const Cand& r) {
                        if (l.value != r.value) return better(l.value, r.value);
                        return l.x < r.x;
                      });

    Outcome best{cands[0].value, to_point(o, cands[0].x), true};
    bool all_converged = true;
    for (std::size_t c = 0; c < keep; ++c) {
      auto [value, x, converged] = refine(o, axes, cands[c].x, cands[c].value, spacing);
      all_converged = all_converged && converged;
      const HcPoint p = to_point(o, x);
      if (better(value, best.value) || (value == best.value && lex_less(p, best.at))) {
        best = {value, p, true};
      }
    }
    best.converged = all_converged;
    return best;
  }

  struct Refined {
    double value;
    std::array<double, 3> x;
    bool converged;
  };

  // Compass search with step halving inside the box.
  Refined refine(const Orthant& o, const std::array<AxisRange, 3>& axes, std::array<double, 3> x,
                 double value, std::array<double, 3> step) const {
    constexpr double kStepFloor = 1e-9;
    for (int iter = 0; iter < cfg_.refine_iterations; ++iter) {
      bool moved = false;
      for (int i = 0; i < 3 && !moved; ++i) {
        for (double dir : {-1.0, 1.0}) {
          std::array<double, 3> y = x;
          y[i] = std::clamp(x[i] + dir * step[i], axes[i].lo, axes[i].hi);
          if (y[i] == x[i]) continue;
          const double v = eval(o, y);
          if (!std::isnan(v) && better(v, value)) {
            x = y;
            value = v;
            moved = true;
            break;
          }
        }
      }
      if (!moved) {
        for (double& s : step) s *= 0.5;
        if (*std::max_element(step.begin(), step.end()) < kStepFloor) return {value, x, true};
      }
    }
    // Out of iterations: accept if the remaining step cannot move the value
    // by more than the relative tolerance.
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (double dir : {-1.0, 1.0}) {
        std::array<double, 3> y = x;
        y[i] = std::clamp(x[i] + dir * step[i], axes[i].lo, axes[i].hi);
        const double v = eval(o, y);
        if (!std::isnan(v)) worst = std::max(worst, minimize_ ? value - v : v - value);
      }
    }
    return {value, x, worst <= cfg_.tol * std::max(1e-12, std::abs(value))};
  }

  double a_, b_, rho_;
  const HcOptimizerConfig& cfg_;
  bool minimize_;
};

}  // namespace

double hc_objective(double a, double b, double rho, double s, double t, double kappa) {
  if (!(s > 0.0 && t > 0.0) || s == 1.0 || t == 1.0 || kappa == 1.0) return kNaN;
  return phi_log(a, b, rho, std::log(s), std::log(t), kappa);
}

HcBounds hc_bounds(double a, double b, double rho, const HcOptimizerConfig& cfg) {
  check_unit(a, "a");
  check_unit(b, "b");
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("hc_bounds: rho must lie in [0, 1]");
  validate(cfg);

  HcBounds out;
  if (a == 0.0 || a == 1.0 || b == 0.0 || b == 1.0 || rho == 0.0) {
    // One side is constant, or X and Y are independent.
    out.lb = out.ub = a * b;
    out.closed_form = true;
    return out;
  }
  out.wide_domain_warning = rho == 1.0;
  const auto upper = HcSearch(a, b, rho, cfg, true).run();
  const auto lower = HcSearch(a, b, rho, cfg, false).run();
  out.ub = upper.value;
  out.ub_at = upper.at;
  out.lb = lower.value;
  out.lb_at = lower.at;
  out.converged = upper.converged && lower.converged;
  return out;
}

// ---- aggregate ---------------------------------------------------------------

namespace {

std::string describe(const TransformRecord& rec) {
  if (rec.offset == 0.0 && rec.sign == 1.0) return "";
  std::ostringstream os;
  os.precision(17);
  os << " mapped by q = " << rec.offset << (rec.sign > 0 ? " + " : " - ") << "q'";
  return os.str();
}

// Maps a normalized (lb, ub) pair with raw values into original coordinates.
void place(const NormalizedInstance& norm, double lb_raw, double ub_raw,
           const std::string& lb_name, const std::string& ub_name, BoundValue& lb_out,
           BoundValue& ub_out) {
  const TransformRecord& rec = norm.record;
  const double lb = std::clamp(lb_raw, 0.0, norm.a);
  const double ub = std::clamp(ub_raw, 0.0, norm.a);
  const std::string how = describe(rec);
  if (rec.sign > 0) {
    lb_out = {rec.to_original(lb), rec.to_original(lb_raw), lb_name + how};
    ub_out = {rec.to_original(ub), rec.to_original(ub_raw), ub_name + how};
  } else {
    lb_out = {rec.to_original(ub), rec.to_original(ub_raw), ub_name + how};
    ub_out = {rec.to_original(lb), rec.to_original(lb_raw), lb_name + how};
  }
}

}  // namespace

BoundsReport combined_report(double a, double b, double rho, const HcOptimizerConfig& cfg) {
  BoundsReport r;
  r.a = a;
  r.b = b;
  r.rho = rho;
  r.normalized = normalize_instance(a, b, rho);
  const NormalizedInstance& n = r.normalized;

  const UpsilonBounds ups = theorem1_bounds(n.a, n.b, n.rho);
  // Each Upsilon lower bound pairs with the upper bound of the same index for
  // de-normalization; the combined value takes the best of both indices.
  place(n, ups.lb1, ups.ub1, "theorem1.upsilon1_lb", "theorem1.upsilon1_ub", r.upsilon1_lb,
        r.upsilon1_ub);
  place(n, ups.lb2, ups.ub2, "theorem1.upsilon2_lb", "theorem1.upsilon2_ub", r.upsilon2_lb,
        r.upsilon2_ub);

  const double ab = n.a * n.b;
  const double dev = std::sqrt(n.a * (1.0 - n.a) * n.b * (1.0 - n.b)) * n.rho;
  place(n, ab - dev, ab + dev, "maximal_correlation.lb", "maximal_correlation.ub", r.mc_lb,
        r.mc_ub);

  const HcBounds hc = hc_bounds(n.a, n.b, n.rho, cfg);
  place(n, hc.lb, hc.ub, "hypercontractivity.lb", "hypercontractivity.ub", r.hc_lb, r.hc_ub);
  r.hc_converged = hc.converged;
  r.hc_wide_domain_warning = hc.wide_domain_warning;

  r.combined_lb = r.upsilon1_lb;
  for (const BoundValue* v : {&r.upsilon2_lb, &r.mc_lb, &r.hc_lb}) {
    if (v->value > r.combined_lb.value) r.combined_lb = *v;
  }
  r.combined_ub = r.upsilon1_ub;
  for (const BoundValue* v : {&r.upsilon2_ub, &r.mc_ub, &r.hc_ub}) {
    if (v->value < r.combined_ub.value) r.combined_ub = *v;
  }
  if (r.combined_lb.value > r.combined_ub.value + 1e-9) {
    throw NumericalError("combined_report: lower bound exceeds upper bound");
  }
  return r;
}

}  // namespace nisbound
