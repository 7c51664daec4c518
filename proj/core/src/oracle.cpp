#include "nisbound/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "nisbound/distance.hpp"
#include "nisbound/errors.hpp"
#include "nisbound/nis_model.hpp"

namespace nisbound {

std::string to_string(Objective o) { return o == Objective::Collision ? "collision" : "distance"; }
std::string to_string(Direction d) { return d == Direction::Max ? "max" : "min"; }

unsigned worker_threads() {
  if (const char* env = std::getenv("NISBOUND_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

using Mask = std::uint32_t;

// Codes over at most 16 points are held as bitmasks over the point index.
std::vector<Word> mask_words(Mask m) {
  std::vector<Word> out;
  for (Mask r = m; r != 0; r &= r - 1) out.push_back(static_cast<Word>(std::countr_zero(r)));
  return out;
}

// For equal-size sets, a larger key means a lexicographically smaller sorted
// word sequence: point x contributes bit (P-1-x).
Mask lex_key(Mask m, int points) {
  Mask key = 0;
  for (Mask r = m; r != 0; r &= r - 1) key |= Mask{1} << (points - 1 - std::countr_zero(r));
  return key;
}

Mask next_combination(Mask v) {
  const Mask t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

double binomial(int n, std::uint64_t k) {
  if (k > static_cast<std::uint64_t>(n)) return 0.0;
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

void check_sizes(int n, std::uint64_t M, std::uint64_t N) {
  const std::uint64_t total = std::uint64_t{1} << n;
  if (M < 1 || M > total || N < 1 || N > total) {
    throw DomainError("code sizes must lie in [1, 2^n]");
  }
}

// Point permutations of the hyperoctahedral group acting on {0..2^n-1}.
std::vector<std::vector<std::uint8_t>> point_actions(int n) {
  std::vector<std::vector<std::uint8_t>> out;
  const int points = 1 << n;
  for (const CubeSymmetry& g : hyperoctahedral_group(n)) {
    std::vector<std::uint8_t> act(static_cast<std::size_t>(points));
    for (int x = 0; x < points; ++x) act[x] = static_cast<std::uint8_t>(g.apply(static_cast<Word>(x)));
    out.push_back(std::move(act));
  }
  return out;
}

Mask canonical_mask(Mask m, int points, const std::vector<std::vector<std::uint8_t>>& actions) {
  Mask best_key = 0;
  for (const auto& act : actions) {
    Mask key = 0;
    for (Mask r = m; r != 0; r &= r - 1) {
      key |= Mask{1} << (points - 1 - act[std::countr_zero(r)]);
    }
    best_key = std::max(best_key, key);
  }
  return lex_key(best_key, points);  // lex_key is its own inverse
}

struct Candidate {
  double value;
  Mask a_key;
  Mask b_key;
  Mask a;
  Mask b;
};

// Lexicographically smaller pair == larger keys.
bool lex_before(const Candidate& l, const Candidate& r) {
  if (l.a_key != r.a_key) return l.a_key > r.a_key;
  return l.b_key > r.b_key;
}

constexpr double kTieTol = 1e-14;

struct ExhaustiveJob {
  int n;
  int points;
  std::uint64_t N;
  Objective objective;
  std::vector<double> weight;  // value contribution per pair at distance d
  std::vector<Mask> reps;

  // Runs f(rep, b, value) over every pair assigned to worker `w` of `workers`.
  template <typename F>
  void for_each_pair(unsigned w, unsigned workers, F&& f) const {
    std::vector<std::array<std::uint32_t, 17>> hist_at(static_cast<std::size_t>(points));
    for (std::size_t r = w; r < reps.size(); r += workers) {
      const Mask rep = reps[r];
      for (int x = 0; x < points; ++x) {
        hist_at[x].fill(0);
        for (Mask q = rep; q != 0; q &= q - 1) {
          ++hist_at[x][std::popcount(static_cast<unsigned>(x ^ std::countr_zero(q)))];
        }
      }
      const Mask last = static_cast<Mask>(((std::uint64_t{1} << N) - 1) << (points - N));
      for (Mask b = static_cast<Mask>((std::uint64_t{1} << N) - 1);; b = next_combination(b)) {
        std::array<std::uint32_t, 17> hist{};
        for (Mask q = b; q != 0; q &= q - 1) {
          const auto& h = hist_at[std::countr_zero(q)];
          for (int d = 0; d <= n; ++d) hist[d] += h[d];
        }
        double v = 0.0;
        for (int d = 0; d <= n; ++d) v += static_cast<double>(hist[d]) * weight[d];
        f(rep, b, v);
        if (b == last) break;
      }
    }
  }
};

template <typename F>
void run_parallel(unsigned workers, F&& f) {
  if (workers <= 1) {
    f(0U);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&f, w] { f(w); });
}

}  // namespace

std::vector<std::uint32_t> orbit_representatives(int n, std::uint64_t M) {
  if (n < 1 || n > kMaxExhaustiveDim) {
    throw BudgetError("orbit enumeration supports n <= " + std::to_string(kMaxExhaustiveDim));
  }
  check_sizes(n, M, 1);
  const int points = 1 << n;
  const auto actions = point_actions(n);
  std::vector<Mask> reps;
  const Mask first = static_cast<Mask>((std::uint64_t{1} << M) - 1);
  const Mask last = static_cast<Mask>(((std::uint64_t{1} << M) - 1) << (points - M));
  for (Mask m = first;; m = next_combination(m)) {
    if (canonical_mask(m, points, actions) == m) reps.push_back(m);
    if (m == last) break;
  }
  // Ascending lexicographic order of the word sequences.
  std::sort(reps.begin(), reps.end(), [points](Mask l, Mask r) {
    return lex_key(l, points) > lex_key(r, points);
  });
  return reps;
}

double exhaustive_cost_estimate(int n, std::uint64_t M, std::uint64_t N) {
  // Calibrated loosely: ~2 ns per elementary step on a desktop core.
  constexpr double kStepSeconds = 2e-9;
  const int points = 1 << std::min(n, 20);
  const double group = std::ldexp(1.0, n) * std::tgamma(n + 1.0);
  const double subsets_a = binomial(points, M);
  const double subsets_b = binomial(points, N);
  const double orbits = subsets_a / group + 1.0;
  const double canon = subsets_a * group * static_cast<double>(M);
  const double pairs = 2.0 * orbits * subsets_b * static_cast<double>(N * (n + 1));
  return (canon + pairs) * kStepSeconds;
}

OracleResult exhaustive_extremes(int n, std::uint64_t M, std::uint64_t N, double rho,
                                 Objective objective) {
  if (n < 1) throw DomainError("exhaustive_extremes: n must be >= 1");
  if (n > kMaxExhaustiveDim) {
    throw BudgetError("exhaustive search supports n <= " + std::to_string(kMaxExhaustiveDim) +
                      "; use local_search for larger blocklengths");
  }
  check_sizes(n, M, N);
  if (objective == Objective::Collision && !(std::abs(rho) <= 1.0)) {
    throw DomainError("exhaustive_extremes: |rho| must be <= 1");
  }
  if (exhaustive_cost_estimate(n, M, N) > kExhaustiveBudgetSeconds) {
    throw BudgetError("exhaustive search projected to exceed the time budget");
  }
  const auto start = std::chrono::steady_clock::now();

  ExhaustiveJob job{n, 1 << n, N, objective, {}, orbit_representatives(n, M)};
  if (objective == Objective::Collision) {
    const DsbsInstance source(rho, n);
    for (int d = 0; d <= n; ++d) job.weight.push_back(source.pair_probability(d));
  } else {
    const double pairs = static_cast<double>(M) * static_cast<double>(N);
    for (int d = 0; d <= n; ++d) job.weight.push_back(d / pairs);
  }

  const unsigned workers =
      std::min<unsigned>(worker_threads(), static_cast<unsigned>(job.reps.size()));

  // Pass 1: extreme values.
  std::vector<double> hi(workers, -std::numeric_limits<double>::infinity());
  std::vector<double> lo(workers, std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> counted(workers, 0);
  run_parallel(workers, [&](unsigned w) {
    job.for_each_pair(w, workers, [&](Mask, Mask, double v) {
      hi[w] = std::max(hi[w], v);
      lo[w] = std::min(lo[w], v);
      ++counted[w];
    });
  });
  const double max_v = *std::max_element(hi.begin(), hi.end());
  const double min_v = *std::min_element(lo.begin(), lo.end());

  // Pass 2: lexicographically smallest pair within the tie tolerance.
  const double tol = objective == Objective::Collision ? kTieTol : 0.0;
  const int points = job.points;
  std::vector<std::optional<Candidate>> best_hi(workers), best_lo(workers);
  run_parallel(workers, [&](unsigned w) {
    job.for_each_pair(w, workers, [&](Mask a, Mask b, double v) {
      auto consider = [&](std::optional<Candidate>& slot) {
        Candidate c{v, lex_key(a, points), lex_key(b, points), a, b};
        if (!slot || lex_before(c, *slot)) slot = c;
      };
      if (v >= max_v - tol) consider(best_hi[w]);
      if (v <= min_v + tol) consider(best_lo[w]);
    });
  });
  auto reduce = [](std::vector<std::optional<Candidate>>& slots) {
    std::optional<Candidate> out;
    for (auto& s : slots) {
      if (s && (!out || lex_before(*s, *out))) out = s;
    }
    return *out;
  };
  const Candidate top = reduce(best_hi);
  const Candidate bottom = reduce(best_lo);

  OracleResult res;
  res.n = n;
  res.M = M;
  res.N = N;
  if (objective == Objective::Collision) res.rho = rho;
  res.objective = objective;
  res.max_value = top.value;
  res.min_value = bottom.value;
  res.max_witness = Witness{make_code(n, mask_words(top.a)), make_code(n, mask_words(top.b))};
  res.min_witness = Witness{make_code(n, mask_words(bottom.a)), make_code(n, mask_words(bottom.b))};
  res.exhaustive = true;
  res.stats.orbits = job.reps.size();
  res.stats.pairs_evaluated = std::accumulate(counted.begin(), counted.end(), std::uint64_t{0});
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

OracleResult exhaustive_distance_extremes(int n, std::uint64_t M, std::uint64_t N) {
  return exhaustive_extremes(n, M, N, 0.0, Objective::Distance);
}

// ---- local search ------------------------------------------------------------

namespace {

class SwapClimber {
 public:
  SwapClimber(int n, double rho, Direction dir) : size_(std::size_t{1} << n) {
    const DsbsInstance source(rho, n);
    const double sign = dir == Direction::Max ? 1.0 : -1.0;
    for (int d = 0; d <= n; ++d) kernel_.push_back(sign * source.pair_probability(d));
  }

  // Climbs from (A, B) given as word lists; returns the final lists.
  std::pair<std::vector<Word>, std::vector<Word>> climb(std::vector<Word> a, std::vector<Word> b,
                                                        int iters) {
    std::vector<char> in_a(size_, 0), in_b(size_, 0);
    for (Word w : a) in_a[w] = 1;
    for (Word w : b) in_b[w] = 1;
    std::vector<double> field_a = field(a);  // field_a[x] = sum_{y in A} K(d(x, y))
    std::vector<double> field_b = field(b);

    for (int it = 0; it < iters; ++it) {
      const Swap sb = best_swap(b, in_b, field_a);
      const Swap sa = best_swap(a, in_a, field_b);
      const Swap& s = sb.gain >= sa.gain ? sb : sa;
      if (!(s.gain > kMinGain)) break;
      const bool on_b = &s == &sb;
      std::vector<Word>& words = on_b ? b : a;
      std::vector<char>& member = on_b ? in_b : in_a;
      std::vector<double>& f = on_b ? field_b : field_a;
      const Word out = words[s.index];
      words[s.index] = s.incoming;
      member[out] = 0;
      member[s.incoming] = 1;
      for (std::size_t x = 0; x < size_; ++x) {
        f[x] += kernel_[hamming_distance(x, s.incoming)] - kernel_[hamming_distance(x, out)];
      }
    }
    return {std::move(a), std::move(b)};
  }

 private:
  static constexpr double kMinGain = 1e-15;

  struct Swap {
    double gain = -std::numeric_limits<double>::infinity();
    std::size_t index = 0;
    Word incoming = 0;
  };

  std::vector<double> field(const std::vector<Word>& words) const {
    std::vector<double> f(size_, 0.0);
    for (std::size_t x = 0; x < size_; ++x) {
      for (Word w : words) f[x] += kernel_[hamming_distance(x, w)];
    }
    return f;
  }

  // Replace the member with the smallest field value by the non-member with
  // the largest. Ties go to the smallest word.
  Swap best_swap(const std::vector<Word>& words, const std::vector<char>& member,
                 const std::vector<double>& f) const {
    Swap s;
    if (words.size() == size_) return s;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (f[words[i]] < f[words[worst]] ||
          (f[words[i]] == f[words[worst]] && words[i] < words[worst])) {
        worst = i;
      }
    }
    double best_in = -std::numeric_limits<double>::infinity();
    Word incoming = 0;
    for (std::size_t x = 0; x < size_; ++x) {
      if (!member[x] && f[x] > best_in) {
        best_in = f[x];
        incoming = x;
      }
    }
    s.gain = best_in - f[words[worst]];
    s.index = worst;
    s.incoming = incoming;
    return s;
  }

  std::size_t size_;
  std::vector<double> kernel_;
};

std::vector<Word> random_subset(std::size_t points, std::uint64_t count, std::mt19937_64& rng) {
  std::vector<Word> all(points);
  std::iota(all.begin(), all.end(), Word{0});
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, points - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(count);
  return all;
}

std::optional<int> pinned_count(int n, std::uint64_t size) {
  if (!std::has_single_bit(size)) return std::nullopt;
  return n - std::countr_zero(size);
}

}  // namespace

OracleResult local_search(int n, std::uint64_t M, std::uint64_t N, double rho, Direction direction,
                          std::uint64_t seed, int iters, const LocalSearchConfig& cfg) {
  if (n < 1 || n > 16) throw DomainError("local_search: n must lie in [1, 16]");
  check_sizes(n, M, N);
  if (!(std::abs(rho) <= 1.0)) throw DomainError("local_search: |rho| must be <= 1");
  if (iters < 0 || cfg.restarts < 0) throw DomainError("local_search: negative iteration budget");
  const auto start = std::chrono::steady_clock::now();

  std::vector<std::pair<std::vector<Word>, std::vector<Word>>> starts;
  const auto ka = pinned_count(n, M);
  const auto kb = pinned_count(n, N);
  if (ka && kb) {
    const BinaryCode a = subcube(n, *ka);
    const BinaryCode b = direction == Direction::Max ? subcube(n, *kb) : star(subcube(n, *kb));
    starts.emplace_back(std::vector<Word>(a.words().begin(), a.words().end()),
                        std::vector<Word>(b.words().begin(), b.words().end()));
  }
  std::mt19937_64 rng(seed);
  const std::size_t points = std::size_t{1} << n;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto a = random_subset(points, M, rng);
    auto b = random_subset(points, N, rng);
    starts.emplace_back(std::move(a), std::move(b));
  }

  SwapClimber climber(n, rho, direction);
  OracleResult res;
  res.n = n;
  res.M = M;
  res.N = N;
  res.rho = rho;
  res.objective = Objective::Collision;
  res.exhaustive = false;
  std::optional<double> best;
  std::optional<Witness> best_witness;
  for (auto& [a0, b0] : starts) {
    auto [a, b] = climber.climb(std::move(a0), std::move(b0), iters);
    Witness w{make_code(n, std::move(a)), make_code(n, std::move(b))};
    const double v = collision_from_counts(distance_counts(w.a, w.b), rho);
    const bool improves = !best || (direction == Direction::Max ? v > *best : v < *best);
    if (improves) {
      best = v;
      best_witness = std::move(w);
    }
    res.stats.pairs_evaluated += M * N;
  }
  if (direction == Direction::Max) {
    res.max_value = best;
    res.max_witness = std::move(best_witness);
  } else {
    res.min_value = best;
    res.min_witness = std::move(best_witness);
  }
  res.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// ---- constructions -------------------------------------------------------------

Construction parse_construction(const std::string& name) {
  if (name == "symmetric-subcube") return Construction::SymmetricSubcube;
  if (name == "antisymmetric-subcube") return Construction::AntisymmetricSubcube;
  if (name == "hamming-ball-pair") return Construction::HammingBallPair;
  throw DomainError("unknown construction: " + name);
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::SymmetricSubcube:
      return "symmetric-subcube";
    case Construction::AntisymmetricSubcube:
      return "antisymmetric-subcube";
    case Construction::HammingBallPair:
      return "hamming-ball-pair";
  }
  return "unknown";
}

double construction_value(Construction kind, int n, int param, double rho) {
  if (param < 0 || param > n) throw DomainError("construction_value: parameter outside [0, n]");
  switch (kind) {
    case Construction::SymmetricSubcube: {
      const BinaryCode a = subcube(n, param);
      return collision_prob(a, a, rho);
    }
    case Construction::AntisymmetricSubcube: {
      const BinaryCode a = subcube(n, param);
      return collision_prob(a, star(a), rho);
    }
    case Construction::HammingBallPair: {
      const BinaryCode a = hamming_ball(n, dim_mask(n), param);
      return collision_prob(a, a, rho);
    }
  }
  throw DomainError("construction_value: invalid kind");
}

}  // namespace nisbound
