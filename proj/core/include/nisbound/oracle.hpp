#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nisbound/hypercube.hpp"

namespace nisbound {

enum class Objective { Collision, Distance };
enum class Direction { Max, Min };

std::string to_string(Objective o);
std::string to_string(Direction d);

struct Witness {
  BinaryCode a;
  BinaryCode b;
};

struct SearchStats {
  std::uint64_t pairs_evaluated = 0;
  std::uint64_t orbits = 0;
  double wall_seconds = 0.0;
};

/// Extremes of q (collision) or D(A,B) (distance) over code pairs of fixed
/// sizes. Values are reported exactly as the witness evaluates.
struct OracleResult {
  int n = 0;
  std::uint64_t M = 0;
  std::uint64_t N = 0;
  std::optional<double> rho;
  Objective objective = Objective::Collision;
  std::optional<double> max_value;
  std::optional<double> min_value;
  std::optional<Witness> max_witness;
  std::optional<Witness> min_witness;
  bool exhaustive = false;
  SearchStats stats;
};

inline constexpr int kMaxExhaustiveDim = 4;
inline constexpr double kExhaustiveBudgetSeconds = 600.0;

/// Exhaustive search for n <= 4. A ranges over canonical orbit
/// representatives, B over every N-subset. Ties resolve to the
/// lexicographically smallest (A, B). Throws BudgetError beyond n = 4 or
/// when the projected run time exceeds the budget; DomainError on bad sizes.
/// `rho` is required for the collision objective and ignored for distance.
OracleResult exhaustive_extremes(int n, std::uint64_t M, std::uint64_t N, double rho,
                                 Objective objective);
OracleResult exhaustive_distance_extremes(int n, std::uint64_t M, std::uint64_t N);

/// Projected seconds for an exhaustive run (used by the budget gate).
double exhaustive_cost_estimate(int n, std::uint64_t M, std::uint64_t N);

/// Number of orbits of M-subsets of {-1,1}^n under the hyperoctahedral group,
/// together with their canonical representatives as bitmasks over points.
std::vector<std::uint32_t> orbit_representatives(int n, std::uint64_t M);

struct LocalSearchConfig {
  int restarts = 8;  // random starts in addition to the construction seeds
};

/// Swap hill-climbing on the collision objective, n <= 16. Starts include the
/// nested-subcube construction when the sizes allow one. Deterministic for a
/// fixed seed. The result is a one-sided certificate (exhaustive = false).
OracleResult local_search(int n, std::uint64_t M, std::uint64_t N, double rho, Direction direction,
                          std::uint64_t seed, int iters, const LocalSearchConfig& cfg = {});

enum class Construction { SymmetricSubcube, AntisymmetricSubcube, HammingBallPair };

Construction parse_construction(const std::string& name);
std::string to_string(Construction c);

/// q of a named scheme on n coordinates. For the subcube kinds `param` is the
/// pinned count i (a = 2^-i); for hamming-ball-pair it is the radius of a
/// ball centred at the all-plus point, used for both parties.
double construction_value(Construction kind, int n, int param, double rho);

/// Worker threads for the parallel searches: NISBOUND_THREADS if set and
/// positive, else hardware concurrency.
unsigned worker_threads();

}  // namespace nisbound
