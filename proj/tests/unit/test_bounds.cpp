#include <cmath>

#include "doctest.h"
#include "nisbound/bounds.hpp"
#include "nisbound/errors.hpp"
#include "nisbound/nis_model.hpp"
#include "nisbound/oracle.hpp"
#include "support/reference.hpp"

using namespace nisbound;

namespace {

// Applies the recorded reductions to explicit codes.
std::pair<BinaryCode, BinaryCode> normalized_codes(const TransformRecord& rec, BinaryCode a,
                                                   BinaryCode b) {
  if (rec.negate_x) a = star(a);
  if (rec.complement_f) a = complement(a);
  if (rec.complement_g) b = complement(b);
  if (rec.swapped) std::swap(a, b);
  return {a, b};
}

}  // namespace

TEST_CASE("normalize_instance examples") {
  auto n = normalize_instance(0.3, 0.2, 0.5);
  CHECK(n.a == 0.2);
  CHECK(n.b == 0.3);
  CHECK(n.rho == 0.5);
  CHECK(n.record.steps() == std::vector<std::string>{"swap"});

  n = normalize_instance(0.25, 0.25, -0.4);
  CHECK(n.rho == 0.4);
  CHECK(n.record.steps() == std::vector<std::string>{"negate_x"});
  CHECK(n.record.to_original(0.1) == 0.1);

  n = normalize_instance(0.7, 0.25, 0.4);
  CHECK(n.a == doctest::Approx(0.25));
  CHECK(n.b == doctest::Approx(0.3));
  CHECK(n.record.complement_f);
  CHECK(n.record.to_original(0.05) == doctest::Approx(0.25 - 0.05));

  n = normalize_instance(0.75, 0.75, 0.5);
  CHECK(n.a == 0.25);
  CHECK(n.b == 0.25);
  CHECK(n.record.sign == 1.0);
  CHECK(n.record.to_original(0.1) == doctest::Approx(0.5 + 0.1));

  CHECK_THROWS_AS(normalize_instance(1.5, 0.2, 0.1), DomainError);
  CHECK_THROWS_AS(normalize_instance(0.5, 0.2, -1.1), DomainError);
}

TEST_CASE("normalization against explicit codes") {
  // a = 0.75 -> 0.25 via f-complement, b = 0.25; q = b - q'.
  const BinaryCode a = complement(subcube(4, 2));
  const BinaryCode b = make_code(4, {0, 3, 5, 6});
  const auto n = normalize_instance(a.density(), b.density(), 0.4);
  const auto [na, nb] = normalized_codes(n.record, a, b);
  CHECK(na.density() == doctest::Approx(n.a));
  CHECK(nb.density() == doctest::Approx(n.b));
  CHECK(n.record.to_original(collision_prob(na, nb, n.rho)) ==
        doctest::Approx(collision_prob(a, b, 0.4)).epsilon(1e-12));
}

TEST_CASE("property: normalization round trip on random codes") {
  ref::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 8));
    const BinaryCode a = gen.proper_code(n);
    const BinaryCode b = gen.proper_code(n);
    const double rho = gen.real(-1.0, 1.0);
    const auto norm = normalize_instance(a.density(), b.density(), rho);
    CHECK(norm.a <= norm.b);
    CHECK(norm.b <= 0.5);
    CHECK(norm.rho >= 0.0);
    const auto [na, nb] = normalized_codes(norm.record, a, b);
    CHECK(std::abs(norm.record.to_original(collision_prob(na, nb, norm.rho)) -
                   collision_prob(a, b, rho)) <= 1e-12);
  }
}

TEST_CASE("theorem1_bounds examples") {
  for (double rho : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const auto half = theorem1_bounds(0.5, 0.5, rho);
    CHECK(half.lower() == doctest::Approx((1 - rho) / 4));
    CHECK(half.upper() == doctest::Approx((1 + rho) / 4));

    const auto quarter = theorem1_bounds(0.25, 0.25, rho);
    CHECK(quarter.upper() == doctest::Approx(std::pow((1 + rho) / 4, 2)));
    CHECK(quarter.lower() == doctest::Approx(std::max(0.0, (1 - 2 * rho - rho * rho) / 16)));
  }
  const auto zero = theorem1_bounds(0.2, 0.35, 0.0);
  for (double v : {zero.lb1, zero.lb2, zero.ub1, zero.ub2}) CHECK(v == doctest::Approx(0.07));

  CHECK_THROWS_AS(theorem1_bounds(0.3, 0.2, 0.5), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(0.2, 0.6, 0.5), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(0.2, 0.3, -0.5), DomainError);
}

TEST_CASE("symmetric_bounds examples") {
  for (double rho : {0.0, 0.3, 0.5, 0.8}) {
    CHECK(symmetric_bounds(0.25, rho).ub == doctest::Approx(std::pow((1 + rho) / 4, 2)));
  }
  const auto top = symmetric_bounds(0.5, 1.0);
  CHECK(top.lb == doctest::Approx(0.0));
  CHECK(top.ub == doctest::Approx(0.5));
  for (double a : {0.05, 0.2, 0.37, 0.5}) CHECK(symmetric_bounds(a, 1.0).ub == doctest::Approx(a));
  CHECK_THROWS_AS(symmetric_bounds(0.6, 0.5), DomainError);
}

TEST_CASE("maximal correlation examples") {
  for (double rho : {0.0, 0.2, 0.7}) {
    const auto mc = maximal_correlation_bounds(0.5, 0.5, rho);
    CHECK(mc.lb == doctest::Approx(0.25 - rho / 4));
    CHECK(mc.ub == doctest::Approx(0.25 + rho / 4));
  }
  const auto indep = maximal_correlation_bounds(0.3, 0.6, 0.0);
  CHECK(indep.lb == doctest::Approx(0.18));
  CHECK(indep.ub == doctest::Approx(0.18));
  CHECK(maximal_correlation_bounds(0.25, 0.25, 1.0).ub == doctest::Approx(0.25));
  const auto q = maximal_correlation_bounds(0.25, 0.25, 0.5);
  CHECK(q.ub == doctest::Approx(0.15625));
  CHECK(q.ub > symmetric_bounds(0.25, 0.5).ub);
  CHECK(symmetric_bounds(0.25, 0.5).ub == doctest::Approx(0.140625));
}

TEST_CASE("closed-form family relations on a dense grid") {
  bool lb1_wins = false;
  bool lb2_wins = false;
  for (int i = 1; i <= 50; ++i) {
    const double a = i / 100.0;
    for (int j = i; j <= 50; ++j) {
      const double b = j / 100.0;
      for (int k = 1; k < 20; ++k) {
        const double rho = k / 20.0;
        const auto u = theorem1_bounds(a, b, rho);
        const auto mc = maximal_correlation_bounds(a, b, rho);
        CHECK(u.lower() <= u.upper() + 1e-12);
        CHECK(u.ub1 <= mc.ub + 1e-12);
        if (!(i == 50 && j == 50) && mc.ub < a - 1e-9) CHECK(u.ub1 < mc.ub);
        if (i == j) CHECK(u.lb2 >= mc.lb - 1e-12);
        lb1_wins = lb1_wins || u.lb1 > u.lb2 + 1e-9;
        lb2_wins = lb2_wins || u.lb2 > u.lb1 + 1e-9;
      }
    }
  }
  // Neither lower bound dominates the other.
  CHECK(lb1_wins);
  CHECK(lb2_wins);
  const auto half = theorem1_bounds(0.5, 0.5, 0.6);
  CHECK(half.ub1 == doctest::Approx(maximal_correlation_bounds(0.5, 0.5, 0.6).ub));
}

TEST_CASE("upsilon2 lower bound against maximal correlation at b = 1/2") {
  // mc_lb - lb2 = (rho/2)(sqrt(a/2) - sqrt(a(1-a))) + (rho^2/2)(1/2 - sqrt(a/2)),
  // which changes sign at rho_star. The looser-than-mc ordering holds above it.
  for (int i = 1; i < 50; ++i) {
    const double a = i / 100.0;
    const double rho_star =
        (std::sqrt(a * (1 - a)) - std::sqrt(a / 2)) / (0.5 - std::sqrt(a / 2));
    for (int k = 0; k <= 100; ++k) {
      const double rho = k / 100.0;
      const auto u = theorem1_bounds(a, 0.5, rho);
      const auto mc = maximal_correlation_bounds(a, 0.5, rho);
      if (rho >= rho_star) CHECK(u.lb2 <= mc.lb + 1e-12);
      if (rho > 0 && rho < rho_star && mc.lb > 0) CHECK(u.lb2 > mc.lb);
    }
  }
  const auto u = theorem1_bounds(0.25, 0.5, 0.1);
  CHECK(u.lb2 == doctest::Approx(0.106588).epsilon(1e-5));
  CHECK(maximal_correlation_bounds(0.25, 0.5, 0.1).lb == doctest::Approx(0.103349).epsilon(1e-5));
}

TEST_CASE("hc objective") {
  CHECK(std::isnan(hc_objective(0.3, 0.3, 0.5, 1.0, 2.0, 2.0)));
  CHECK(std::isnan(hc_objective(0.3, 0.3, 0.5, 2.0, 2.0, 1.0)));
  CHECK(std::isnan(hc_objective(0.3, 0.3, 0.5, -1.0, 2.0, 2.0)));
  // Direct evaluation of the defining expression at a benign point.
  const double a = 0.3, b = 0.4, rho = 0.5, s = 2.0, t = 3.0, k = 2.5;
  const double kp = 1 + rho * rho / (k - 1);
  const double direct =
      (std::pow(std::pow(s, kp) * a + 1 - a, 1 / kp) * std::pow(std::pow(t, k) * b + 1 - b, 1 / k) -
       1) / ((s - 1) * (t - 1)) - a / (t - 1) - b / (s - 1);
  CHECK(hc_objective(a, b, rho, s, t, k) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("hc bounds: closed-form endpoints and config validation") {
  auto h = hc_bounds(0.3, 0.4, 0.0);
  CHECK(h.closed_form);
  CHECK(h.lb == doctest::Approx(0.12));
  CHECK(h.ub == doctest::Approx(0.12));
  h = hc_bounds(0.0, 0.4, 0.5);
  CHECK(h.ub == 0.0);
  h = hc_bounds(0.3, 1.0, 0.5);
  CHECK(h.ub == doctest::Approx(0.3));
  h = hc_bounds(0.3, 0.3, 1.0);
  CHECK(h.wide_domain_warning);

  HcOptimizerConfig bad;
  bad.grid_points = 1;
  CHECK_THROWS_AS(hc_bounds(0.3, 0.3, 0.5, bad), DomainError);
  bad = {};
  bad.st_min = 2.0;
  CHECK_THROWS_AS(validate(bad), DomainError);
  CHECK_THROWS_AS(hc_bounds(0.3, 0.3, -0.5), DomainError);
}

TEST_CASE("hc bounds: limits and agreement at a = 1/2") {
  for (double a : {0.1, 0.3, 0.5}) {
    double prev = 1.0;
    for (double rho : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const auto h = hc_bounds(a, a, rho);
      const double gap = std::max(h.ub - a * a, a * a - h.lb);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev <= 1e-4);
  }
  for (double rho : {0.1, 0.5, 0.9}) {
    const auto h = hc_bounds(0.5, 0.5, rho);
    CHECK(h.converged);
    CHECK(std::abs(h.ub - (1 + rho) / 4) <= 1e-4);
    CHECK(std::abs(h.lb - (1 - rho) / 4) <= 1e-4);
    // Valid bounds never cut into the attainable dictator values.
    CHECK(h.ub >= (1 + rho) / 4 - 1e-9);
    CHECK(h.lb <= (1 - rho) / 4 + 1e-9);
  }
}

TEST_CASE("hc bounds lie inside the maximal-correlation interval") {
  for (int i = 1; i <= 10; ++i) {
    const double a = 0.05 * i;
    for (double rho : {0.1, 0.5, 0.9}) {
      const auto h = hc_bounds(a, a, rho);
      const auto mc = maximal_correlation_bounds(a, a, rho);
      CHECK(h.ub <= mc.ub + 1e-6);
      CHECK(std::max(0.0, h.lb) >= mc.lb - 1e-6);
    }
  }
}

TEST_CASE("hc bounds: a finer grid never worsens the bound by more than tol") {
  HcOptimizerConfig fine;
  fine.grid_points = 49;
  for (double a : {0.05, 0.2, 0.4}) {
    const auto coarse = hc_bounds(a, a, 0.5);
    const auto refined = hc_bounds(a, a, 0.5, fine);
    CHECK(refined.ub <= coarse.ub + coarse.ub * 1e-6 + 1e-12);
    CHECK(refined.lb >= coarse.lb - std::abs(coarse.lb) * 1e-6 - 1e-12);
  }
}

TEST_CASE("combined_report examples") {
  auto r = combined_report(0.5, 0.5, 0.5);
  CHECK(r.combined_lb.value == doctest::Approx(0.125));
  CHECK(r.combined_ub.value == doctest::Approx(0.375));

  r = combined_report(0.25, 0.25, 0.5);
  CHECK(r.combined_ub.value == doctest::Approx(0.140625));
  CHECK(r.upsilon2_ub.value == doctest::Approx(0.140625));

  r = combined_report(0.75, 0.75, 0.5);
  const auto quarter = combined_report(0.25, 0.25, 0.5);
  CHECK(r.combined_ub.value == doctest::Approx(0.5 + quarter.combined_ub.value));
  CHECK(r.combined_lb.value == doctest::Approx(0.5 + quarter.combined_lb.value));
  // Exact extremes at n = 2 with three points each sit inside the interval.
  const auto o = exhaustive_extremes(2, 3, 3, 0.5, Objective::Collision);
  CHECK(*o.min_value >= r.combined_lb.value - 1e-9);
  CHECK(*o.max_value <= r.combined_ub.value + 1e-9);
  const BinaryCode a = complement(make_code(2, {0}));
  CHECK(collision_prob(a, a, 0.5) ==
        doctest::Approx(0.5 + collision_prob(make_code(2, {0}), make_code(2, {0}), 0.5)));

  r = combined_report(0.3, 0.6, -0.4);
  CHECK(r.combined_lb.source.find("mapped") != std::string::npos);
}

TEST_CASE("property: combined report is consistent across the unit square") {
  ref::Gen gen(62);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = gen.real(0.0, 1.0);
    const double b = gen.real(0.0, 1.0);
    const double rho = gen.real(-1.0, 1.0);
    const auto r = combined_report(a, b, rho);
    const double lo = std::max(0.0, a + b - 1.0);
    const double hi = std::min(a, b);
    CHECK(r.combined_lb.value <= r.combined_ub.value + 1e-9);
    for (const BoundValue* v : {&r.upsilon1_lb, &r.upsilon2_lb, &r.upsilon1_ub, &r.upsilon2_ub,
                                &r.mc_lb, &r.mc_ub, &r.hc_lb, &r.hc_ub}) {
      CHECK(v->value >= lo - 1e-12);
      CHECK(v->value <= hi + 1e-12);
      CHECK_FALSE(v->source.empty());
    }
  }
}
