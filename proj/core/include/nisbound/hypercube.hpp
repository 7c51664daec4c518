#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nisbound {

// A point of {-1,1}^n. Bit i set <=> coordinate x_{i+1} = +1.
using Word = std::uint64_t;

inline constexpr int kMaxDim = 64;
// Paths that materialize a 2^n table (transforms, complements) stop here.
inline constexpr int kMaxTableDim = 24;
// Full hyperoctahedral group enumeration stops here.
inline constexpr int kMaxCanonicalDim = 6;

inline int hamming_distance(Word x, Word y) { return std::popcount(x ^ y); }

inline Word dim_mask(int n) {
  return n >= 64 ? ~Word{0} : (Word{1} << n) - 1;
}

/// A nonempty subset of {-1,1}^n stored as strictly increasing words.
///
/// Instances are immutable once built; every constructor path goes through
/// make_code(), which validates the dimension and the word range and then
/// sorts and deduplicates.
class BinaryCode {
 public:
  int dim() const { return n_; }
  std::size_t size() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }

  /// |A| / 2^n.
  double density() const;
  bool contains(Word w) const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;
  /// Lexicographic on (dim, word sequence).
  friend auto operator<=>(const BinaryCode& l, const BinaryCode& r) {
    if (auto c = l.n_ <=> r.n_; c != 0) return c;
    return l.words_ <=> r.words_;
  }

 private:
  BinaryCode(int n, std::vector<Word> words) : n_(n), words_(std::move(words)) {}
  friend BinaryCode make_code(int n, std::vector<Word> words);

  int n_ = 0;
  std::vector<Word> words_;
};

/// Validates, sorts and deduplicates. Throws DomainError on an empty list, a
/// dimension outside [1, 64] or a word >= 2^n.
BinaryCode make_code(int n, std::vector<Word> words);

/// {-1,1}^n minus A. Requires n <= 24 and |A| < 2^n.
BinaryCode complement(const BinaryCode& code);

/// Componentwise negation {-x : x in A}.
BinaryCode star(const BinaryCode& code);

/// All points whose first k coordinates equal +1 (size 2^(n-k)).
BinaryCode subcube(int n, int k);

BinaryCode hamming_ball(int n, Word center, int radius);

BinaryCode full_cube(int n);

/// Element of the hyperoctahedral group: x -> (flip XOR x) with coordinates
/// permuted so that source coordinate i lands at perm[i].
struct CubeSymmetry {
  std::vector<int> perm;
  Word flips = 0;

  Word apply(Word w) const;
  static CubeSymmetry identity(int n);
};

/// Throws DomainError if the symmetry's size differs from the code dimension
/// or perm is not a bijection.
BinaryCode apply(const CubeSymmetry& g, const BinaryCode& code);

/// All 2^n * n! symmetries, n <= 6.
std::vector<CubeSymmetry> hyperoctahedral_group(int n);

/// Lexicographically smallest sorted word sequence over the orbit of the
/// code under the hyperoctahedral group. n <= 6.
BinaryCode canonical_form(const BinaryCode& code);

/// Renders a word as n characters, most-significant coordinate (x_n) first.
std::string to_bitstring(Word w, int n);

}  // namespace nisbound
