#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#include "cli.hpp"
#include "nisbound/distance.hpp"
#include "nisbound/errors.hpp"
#include "nisbound/fourier.hpp"
#include "nisbound/nis_model.hpp"

namespace nisbound::cli {

namespace {

constexpr std::size_t kMaxDetails = 5;
constexpr double kFault = 1e-6;

enum class Kind { Equal, AtMost };

struct Check {
  const char* name;
  Kind kind;
  double tol;
};

const Check kChecks[] = {
    {"macwilliams-forward", Kind::Equal, 1e-9},
    {"macwilliams-inverse", Kind::Equal, 1e-9},
    {"macwilliams-round-trip", Kind::Equal, 1e-9},
    {"parseval", Kind::Equal, 1e-9},
    {"complement-distance", Kind::Equal, 1e-9},
    {"star-distance", Kind::Equal, 1e-9},
    {"moment-negation", Kind::Equal, 1e-9},
    {"enumerator-complement", Kind::Equal, 1e-9},
    {"enumerator-star", Kind::Equal, 1e-9},
    {"level-one-distance", Kind::Equal, 1e-9},
    {"dual-bridge", Kind::Equal, 1e-9},
    {"collision-paths", Kind::Equal, 1e-9},
    {"theta-range", Kind::AtMost, 1e-12},
    {"dual-cauchy-schwarz", Kind::AtMost, 1e-9},
    {"distance-cauchy-schwarz", Kind::AtMost, 1e-9},
    {"negation-reduction", Kind::Equal, 1e-9},
    {"complement-reduction", Kind::Equal, 1e-9},
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

BinaryCode random_code(int n, std::mt19937_64& rng) {
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t size = std::uniform_int_distribution<std::uint64_t>(1, total - 1)(rng);
  std::vector<Word> all(total);
  std::iota(all.begin(), all.end(), Word{0});
  for (std::uint64_t i = 0; i < size; ++i) {
    std::swap(all[i], all[std::uniform_int_distribution<std::uint64_t>(i, total - 1)(rng)]);
  }
  all.resize(size);
  return make_code(n, std::move(all));
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class Recorder {
 public:
  explicit Recorder(std::string fault) : fault_(std::move(fault)) {
    for (const Check& c : kChecks) outcomes_.push_back({c.name, 0, 0, 0.0, {}});
  }

  // One instance of family `idx`: lhs == rhs (relative) or lhs <= rhs.
  void record(std::size_t idx, double lhs, double rhs, const std::string& where) {
    const Check& c = kChecks[idx];
    IdentityOutcome& o = outcomes_[idx];
    if (fault_ == c.name) {
      lhs = c.kind == Kind::Equal ? lhs + kFault * std::max(1.0, std::abs(rhs))
                                  : std::max(lhs, rhs) + kFault;
    }
    const double e = c.kind == Kind::Equal ? std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs))
                                           : std::max(0.0, lhs - rhs);
    ++o.instances;
    o.max_error = std::max(o.max_error, std::isnan(e) ? INFINITY : e);
    if (!(e <= c.tol)) {
      ++o.failures;
      if (o.details.size() < kMaxDetails) {
        o.details.push_back(where + " lhs=" + fmt("%.17g", lhs) + " rhs=" + fmt("%.17g", rhs));
      }
    }
  }

  std::vector<IdentityOutcome> take() { return std::move(outcomes_); }

 private:
  std::string fault_;
  std::vector<IdentityOutcome> outcomes_;
};

enum Family : std::size_t {
  kMwForward,
  kMwInverse,
  kMwRoundTrip,
  kParseval,
  kComplementDistance,
  kStarDistance,
  kMomentNegation,
  kEnumComplement,
  kEnumStar,
  kLevelOne,
  kDualBridge,
  kCollisionPaths,
  kThetaRange,
  kDualCs,
  kDistanceCs,
  kNegationReduction,
  kComplementReduction,
};

void check_instance(Recorder& rec, const BinaryCode& a, const BinaryCode& b, double z, double rho,
                    const std::string& where) {
  const int n = a.dim();
  const BinaryCode ac = complement(a);
  const BinaryCode as = star(a);
  const double pa = a.density();
  const double pb = b.density();

  const auto fwd = macwilliams_forward(a, b, z);
  rec.record(kMwForward, fwd.lhs, fwd.rhs, where);
  const auto inv = macwilliams_inverse(a, b, z);
  rec.record(kMwInverse, inv.lhs, inv.rhs, where);

  const DistanceDistribution p = distance_distribution(a, b);
  const double w = (1.0 - z) / (1.0 + z);
  rec.record(kMwRoundTrip, std::pow((1.0 + z) / 2.0, n) * dual_enumerator_from_distance(p, w),
             distance_enumerator(p, z), where);

  const FourierSpectrum fa = spectrum(a);
  const FourierSpectrum fb = spectrum(b);
  double energy = 0.0;
  for (double c : fa.coeffs) energy += c * c;
  rec.record(kParseval, energy, 1.0, where);

  const double d_ab = distance_moment(p, 1);
  const double d_acb = average_distance(ac, b);
  rec.record(kComplementDistance,
             static_cast<double>(a.size()) * d_ab + static_cast<double>(ac.size()) * d_acb,
             n * std::ldexp(1.0, n - 1), where);

  const DistanceDistribution ps = distance_distribution(as, b);
  rec.record(kStarDistance, d_ab + distance_moment(ps, 1), n, where);

  for (int k = 0; k <= 4; ++k) {
    double expand = 0.0;
    for (int i = 0; i <= k; ++i) {
      expand += binom(k, i) * std::pow(n, k - i) * ((i % 2) ? -1.0 : 1.0) * distance_moment(p, i);
    }
    rec.record(kMomentNegation, distance_moment(ps, k), expand, where + " k=" + std::to_string(k));
  }

  rec.record(kEnumComplement,
             static_cast<double>(a.size()) * distance_enumerator(p, z) +
                 static_cast<double>(ac.size()) * distance_enumerator(distance_distribution(ac, b), z),
             std::pow(1.0 + z, n), where);
  rec.record(kEnumStar, distance_enumerator(ps, z), std::pow(z, n) * distance_enumerator(p, 1.0 / z),
             where);

  const LevelSums levels = level_sums(fa, fb);
  rec.record(kLevelOne, levels.s[1], 4.0 * pa * pb * (n - 2.0 * d_ab), where);

  const DualDistribution direct = dual_distribution_character_sum(a, b);
  for (int k = 1; k <= n; ++k) {
    rec.record(kDualBridge, direct.q[k], levels.s[k] / (4.0 * pa * pb),
               where + " k=" + std::to_string(k));
  }

  const CollisionPaths paths = collision_paths(a, b, rho);
  rec.record(kCollisionPaths, paths.distance_path, paths.spectral_path, where);

  const double theta = paths.distance_path - pa * pb;
  rec.record(kThetaRange, std::max(-pa * pb - theta, theta - pa * (1.0 - pb)), 0.0, where);

  const DualDistribution qab = dual_distribution(a, b);
  const DualDistribution qaa = dual_distribution(a, a);
  const DualDistribution qbb = dual_distribution(b, b);
  for (int k = 0; k <= n; ++k) {
    rec.record(kDualCs, std::abs(qab.q[k]), std::sqrt(std::max(0.0, qaa.q[k] * qbb.q[k])),
               where + " k=" + std::to_string(k));
  }

  const double half = n / 2.0;
  const double da = average_distance(a, a);
  const double db = average_distance(b, b);
  rec.record(kDistanceCs, std::abs(half - d_ab), std::sqrt(std::max(0.0, (half - da) * (half - db))),
             where);

  const double q = collision_prob(a, b, rho);
  rec.record(kNegationReduction, collision_prob(a, b, -rho), collision_prob(as, b, rho), where);
  rec.record(kComplementReduction, collision_prob(ac, b, rho), pb - q, where);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(families.begin(), families.end(),
                     [](const IdentityOutcome& o) { return o.failures == 0; });
}

std::vector<std::string> identity_families() {
  std::vector<std::string> out;
  for (const Check& c : kChecks) out.emplace_back(c.name);
  return out;
}

VerifyReport run_verify(std::uint64_t seed, int trials, const std::string& inject_fault) {
  if (trials < 1) throw DomainError("verify: trials must be >= 1");
  if (!inject_fault.empty()) {
    const auto names = identity_families();
    if (std::find(names.begin(), names.end(), inject_fault) == names.end()) {
      throw DomainError("verify: unknown identity family '" + inject_fault + "'");
    }
  }
  VerifyReport report;
  report.seed = seed;
  report.trials = trials;
  report.dims = {4, 6, 8, 10};
  Recorder rec(inject_fault);
  std::mt19937_64 rng(seed);
  for (int n : report.dims) {
    for (int t = 0; t < trials; ++t) {
      const BinaryCode a = random_code(n, rng);
      const BinaryCode b = random_code(n, rng);
      const double z = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
      const double rho = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      const std::string where = "n=" + std::to_string(n) + " trial=" + std::to_string(t);
      check_instance(rec, a, b, z, rho, where);
    }
  }
  report.families = rec.take();
  return report;
}

void write_verify_report(std::ostream& os, const VerifyReport& r) {
  os << "verify schema_version=" << kSchemaVersion << " seed=" << r.seed << " trials=" << r.trials
     << " dims=";
  for (std::size_t i = 0; i < r.dims.size(); ++i) os << (i ? "," : "") << r.dims[i];
  os << '\n';
  std::size_t failed = 0;
  for (const IdentityOutcome& o : r.families) {
    const bool ok = o.failures == 0;
    failed += !ok;
    char line[160];
    std::snprintf(line, sizeof line, "%s %-24s instances=%-6llu failures=%-6llu max_err=%.3e\n",
                  ok ? "PASS" : "FAIL", o.name.c_str(),
                  static_cast<unsigned long long>(o.instances),
                  static_cast<unsigned long long>(o.failures), o.max_error);
    os << line;
    for (const std::string& d : o.details) os << "  violation " << o.name << ' ' << d << '\n';
  }
  os << "summary families=" << r.families.size() << " failed=" << failed << '\n';
}

}  // namespace nisbound::cli
