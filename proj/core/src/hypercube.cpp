#include "nisbound/hypercube.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nisbound/errors.hpp"

namespace nisbound {

namespace {

void check_dim(int n, int max_dim, const char* what) {
  if (n < 1 || n > max_dim) {
    throw DomainError(std::string(what) + ": dimension " + std::to_string(n) +
                      " outside [1, " + std::to_string(max_dim) + "]");
  }
}

}  // namespace

double BinaryCode::density() const {
  return static_cast<double>(words_.size()) / std::ldexp(1.0, n_);
}

bool BinaryCode::contains(Word w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

BinaryCode make_code(int n, std::vector<Word> words) {
  check_dim(n, kMaxDim, "make_code");
  if (words.empty()) throw DomainError("make_code: empty word list");
  const Word mask = dim_mask(n);
  for (Word w : words) {
    if ((w & ~mask) != 0) {
      throw DomainError("make_code: word " + std::to_string(w) + " >= 2^" +
                        std::to_string(n));
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return BinaryCode(n, std::move(words));
}

BinaryCode complement(const BinaryCode& code) {
  const int n = code.dim();
  check_dim(n, kMaxTableDim, "complement");
  const Word total = Word{1} << n;
  if (code.size() == total) throw DomainError("complement: code is the full cube");
  std::vector<Word> out;
  out.reserve(total - code.size());
  auto it = code.words().begin();
  for (Word w = 0; w < total; ++w) {
    if (it != code.words().end() && *it == w) {
      ++it;
    } else {
      out.push_back(w);
    }
  }
  return make_code(n, std::move(out));
}

BinaryCode star(const BinaryCode& code) {
  const Word mask = dim_mask(code.dim());
  std::vector<Word> out(code.words().begin(), code.words().end());
  for (Word& w : out) w = ~w & mask;
  return make_code(code.dim(), std::move(out));
}

BinaryCode subcube(int n, int k) {
  check_dim(n, kMaxTableDim, "subcube");
  if (k < 0 || k > n) throw DomainError("subcube: pinned count outside [0, n]");
  const Word pinned = dim_mask(k);
  const Word free_count = Word{1} << (n - k);
  std::vector<Word> out;
  out.reserve(free_count);
  for (Word r = 0; r < free_count; ++r) out.push_back((r << k) | pinned);
  return make_code(n, std::move(out));
}

BinaryCode hamming_ball(int n, Word center, int radius) {
  check_dim(n, kMaxTableDim, "hamming_ball");
  if (radius < 0 || radius > n) throw DomainError("hamming_ball: radius outside [0, n]");
  if ((center & ~dim_mask(n)) != 0) throw DomainError("hamming_ball: center >= 2^n");
  std::vector<Word> out;
  const Word total = Word{1} << n;
  for (Word w = 0; w < total; ++w) {
    if (hamming_distance(w, center) <= radius) out.push_back(w);
  }
  return make_code(n, std::move(out));
}

BinaryCode full_cube(int n) { return subcube(n, 0); }

Word CubeSymmetry::apply(Word w) const {
  const Word x = w ^ flips;
  Word out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out |= ((x >> i) & 1U) << perm[i];
  }
  return out;
}

CubeSymmetry CubeSymmetry::identity(int n) {
  CubeSymmetry g;
  g.perm.resize(n);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  return g;
}

BinaryCode apply(const CubeSymmetry& g, const BinaryCode& code) {
  const int n = code.dim();
  if (static_cast<int>(g.perm.size()) != n) {
    throw DomainError("apply: symmetry dimension does not match code");
  }
  std::vector<int> sorted = g.perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[i] != i) throw DomainError("apply: permutation is not a bijection");
  }
  if ((g.flips & ~dim_mask(n)) != 0) throw DomainError("apply: flip mask >= 2^n");
  std::vector<Word> out;
  out.reserve(code.size());
  for (Word w : code.words()) out.push_back(g.apply(w));
  return make_code(n, std::move(out));
}

std::vector<CubeSymmetry> hyperoctahedral_group(int n) {
  check_dim(n, kMaxCanonicalDim, "hyperoctahedral_group");
  std::vector<CubeSymmetry> group;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (Word flips = 0; flips < (Word{1} << n); ++flips) {
      group.push_back(CubeSymmetry{perm, flips});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return group;
}

BinaryCode canonical_form(const BinaryCode& code) {
  const int n = code.dim();
  check_dim(n, kMaxCanonicalDim, "canonical_form");
  std::vector<Word> best;
  std::vector<Word> image(code.size());
  for (const CubeSymmetry& g : hyperoctahedral_group(n)) {
    std::transform(code.words().begin(), code.words().end(), image.begin(),
                   [&g](Word w) { return g.apply(w); });
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = image;
  }
  return make_code(n, std::move(best));
}

std::string to_bitstring(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((w >> i) & 1U) s[static_cast<std::size_t>(n - 1 - i)] = '1';
  }
  return s;
}

}  // namespace nisbound
