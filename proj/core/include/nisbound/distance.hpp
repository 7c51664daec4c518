#pragma once

#include <cstdint>
#include <vector>

#include "nisbound/hypercube.hpp"

namespace nisbound {

/// Fraction of pairs (x, x') in A x B at each Hamming distance 0..n.
struct DistanceDistribution {
  int n = 0;
  std::vector<double> p;
};

/// Character-sum transform of a code pair, indexed by weight 0..n. Signed.
struct DualDistribution {
  int n = 0;
  std::vector<double> q;
};

struct AvgDistanceBounds {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Both sides of an identity, for harnesses that check |lhs - rhs|.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Pairwise counting is used while |A||B| stays at or below this many pairs;
// above it the XOR cross-correlation goes through the Walsh-Hadamard transform.
inline constexpr std::uint64_t kPairwiseLimit = std::uint64_t{1} << 26;

/// Exact pair counts per distance. `distance_counts` picks the path by
/// kPairwiseLimit; the two explicit variants exist for cross-checking.
std::vector<std::uint64_t> distance_counts(const BinaryCode& a, const BinaryCode& b);
std::vector<std::uint64_t> distance_counts_pairwise(const BinaryCode& a, const BinaryCode& b);
std::vector<std::uint64_t> distance_counts_transform(const BinaryCode& a, const BinaryCode& b);

DistanceDistribution distance_distribution(const BinaryCode& a, const BinaryCode& b);
DistanceDistribution to_distribution(const std::vector<std::uint64_t>& counts);

/// D_k(A,B) = sum_i p(i) i^k. k = 1 is the average distance.
double distance_moment(const DistanceDistribution& dist, int k);
double average_distance(const BinaryCode& a, const BinaryCode& b);

/// Gamma_z(A,B) = sum_i p(i) z^i, z >= 0.
double distance_enumerator(const DistanceDistribution& dist, double z);

/// Via level sums of the two spectra (n <= 24).
DualDistribution dual_distribution(const BinaryCode& a, const BinaryCode& b);
/// Straight from the character-sum definition; O(2^n (|A| + |B|)), n <= 16.
DualDistribution dual_distribution_character_sum(const BinaryCode& a, const BinaryCode& b);

/// Pi_z(A,B) = sum_i Q(i) z^i.
double dual_enumerator(const DualDistribution& dual, double z);

/// lhs = Pi_z(A,B), rhs = (1+z)^n Gamma_{(1-z)/(1+z)}(A,B).
IdentitySides macwilliams_forward(const BinaryCode& a, const BinaryCode& b, double z);
/// lhs = Gamma_z(A,B), rhs = ((1+z)/2)^n Pi_{(1-z)/(1+z)}(A,B).
IdentitySides macwilliams_inverse(const BinaryCode& a, const BinaryCode& b, double z);

/// Polynomial forms of the two identities for callers that already hold the
/// distributions; z may be any real except -1.
double dual_enumerator_from_distance(const DistanceDistribution& dist, double z);
double distance_enumerator_from_dual(const DualDistribution& dual, double z);

// ---- average-distance bounds ------------------------------------------------

/// Single-code bound n/2 - 1/(4a), clamped at 0, for a in (0, 1/2].
double fwy_lower_bound(int n, double a);

/// n/2 -/+ sqrt((a ^ 1-a)(b ^ 1-b)) / (4ab) for a, b in (0, 1].
AvgDistanceBounds cross_distance_bounds(int n, double a, double b);

/// n/2 - ln(1/a), clamped at 0, for a in (0, 1].
double chang_bound(int n, double a);

/// The objective whose infimum over t > 0, t != 1 defines psi(a). At t = 1
/// it returns the removable-singularity limit (1-a)/(2a).
double psi_objective(double a, double t);

/// inf over t of psi_objective(a, t), a in (0, 1).
double psi(double a);

/// n/2 - psi(a), clamped at 0. a = 1 gives n/2.
double psi_bound(int n, double a);

}  // namespace nisbound
