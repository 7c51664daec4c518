#include <set>

#include "doctest.h"
#include "nisbound/distance.hpp"
#include "nisbound/errors.hpp"
#include "nisbound/hypercube.hpp"
#include "support/reference.hpp"

using namespace nisbound;

namespace {
std::vector<Word> words_of(const BinaryCode& c) { return {c.words().begin(), c.words().end()}; }
}  // namespace

TEST_CASE("make_code sorts, dedups and validates") {
  const BinaryCode single = make_code(2, {3});
  CHECK(single.size() == 1);
  CHECK(words_of(single) == std::vector<Word>{3});

  const BinaryCode two = make_code(2, {3, 3, 2});
  CHECK(words_of(two) == std::vector<Word>{2, 3});

  CHECK_THROWS_AS(make_code(3, {8}), DomainError);
  CHECK_THROWS_AS(make_code(3, {}), DomainError);
  CHECK_THROWS_AS(make_code(0, {0}), DomainError);
  CHECK_THROWS_AS(make_code(65, {0}), DomainError);
  CHECK(make_code(64, {~Word{0}}).size() == 1);
}

TEST_CASE("density and membership") {
  const BinaryCode c = make_code(3, {1, 5});
  CHECK(c.density() == doctest::Approx(0.25));
  CHECK(c.contains(5));
  CHECK_FALSE(c.contains(4));
}

TEST_CASE("complement") {
  CHECK(words_of(complement(make_code(1, {1}))) == std::vector<Word>{0});
  CHECK(words_of(complement(make_code(2, {3}))) == std::vector<Word>{0, 1, 2});
  CHECK_THROWS_AS(complement(full_cube(2)), DomainError);
}

TEST_CASE("star negates every word") {
  CHECK(words_of(star(make_code(2, {3}))) == std::vector<Word>{0});
  CHECK(words_of(star(make_code(3, {0, 7}))) == std::vector<Word>{0, 7});
  CHECK(words_of(star(make_code(2, {1, 3}))) == std::vector<Word>{0, 2});
}

TEST_CASE("subcube") {
  const BinaryCode c = subcube(3, 1);
  CHECK(c.size() == 4);
  for (Word w : c.words()) CHECK((w & 1U) == 1U);
  CHECK(words_of(subcube(2, 2)) == std::vector<Word>{3});
  CHECK(subcube(4, 0).size() == 16);
  CHECK_THROWS_AS(subcube(3, 4), DomainError);
}

TEST_CASE("hamming_ball") {
  CHECK(words_of(hamming_ball(3, 7, 0)) == std::vector<Word>{7});
  CHECK(hamming_ball(3, 7, 1).size() == 4);
  CHECK(hamming_ball(3, 0, 3).size() == 8);
  CHECK(hamming_ball(10, 0x3ff, 2).size() == 1 + 10 + 45);
  CHECK_THROWS_AS(hamming_ball(3, 0, 4), DomainError);
  CHECK_THROWS_AS(hamming_ball(3, 8, 1), DomainError);
}

TEST_CASE("hyperoctahedral group has 2^n n! distinct elements") {
  for (int n = 1; n <= 4; ++n) {
    const auto group = hyperoctahedral_group(n);
    std::set<std::pair<std::vector<int>, Word>> seen;
    for (const auto& g : group) seen.insert({g.perm, g.flips});
    const std::size_t expect = (std::size_t{1} << n) * static_cast<std::size_t>(std::tgamma(n + 1.0));
    CHECK(group.size() == expect);
    CHECK(seen.size() == expect);
  }
  CHECK_THROWS_AS(hyperoctahedral_group(7), DomainError);
}

TEST_CASE("apply rejects malformed symmetries") {
  CubeSymmetry g = CubeSymmetry::identity(3);
  CHECK_THROWS_AS(apply(g, make_code(2, {1})), DomainError);
  g.perm = {0, 0, 1};
  CHECK_THROWS_AS(apply(g, make_code(3, {1})), DomainError);
}

TEST_CASE("canonical_form") {
  CHECK(words_of(canonical_form(make_code(2, {3}))) == std::vector<Word>{0});
  // Antipodal pairs form one orbit; the smallest representative is {0, 3}.
  const BinaryCode c1 = canonical_form(make_code(2, {0, 3}));
  const BinaryCode c2 = canonical_form(make_code(2, {1, 2}));
  CHECK(c1 == c2);
  CHECK(words_of(c1) == std::vector<Word>{0, 3});
  CHECK_THROWS_AS(canonical_form(make_code(7, {1})), DomainError);
}

TEST_CASE("canonical_form is a brute-force orbit minimum") {
  ref::Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 3));
    const BinaryCode c = gen.code(n, 1, std::uint64_t{1} << n);
    BinaryCode best = c;
    for (const auto& g : hyperoctahedral_group(n)) best = std::min(best, apply(g, c));
    CHECK(canonical_form(c) == best);
  }
}

TEST_CASE("property: complement sizes and star/complement commute") {
  ref::Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 8));
    const BinaryCode a = gen.proper_code(n);
    const BinaryCode ac = complement(a);
    CHECK(ac.size() + a.size() == (std::size_t{1} << n));
    for (Word w : ac.words()) CHECK_FALSE(a.contains(w));
    CHECK(star(complement(a)) == complement(star(a)));
    CHECK(star(star(a)) == a);
  }
}

TEST_CASE("property: canonical_form is constant on orbits and idempotent") {
  ref::Gen gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 5));
    const BinaryCode a = gen.code(n, 1, std::uint64_t{1} << n);
    const BinaryCode canon = canonical_form(a);
    CHECK(canonical_form(apply(gen.symmetry(n), a)) == canon);
    CHECK(canonical_form(canon) == canon);
    CHECK(canon.size() == a.size());
  }
}

TEST_CASE("property: symmetries preserve the joint distance distribution") {
  ref::Gen gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(gen.uniform(1, 10));
    const BinaryCode a = gen.code(n, 1, 64);
    const BinaryCode b = gen.code(n, 1, 64);
    const CubeSymmetry g = gen.symmetry(n);
    CHECK(distance_counts(a, b) == distance_counts(apply(g, a), apply(g, b)));
  }
}

TEST_CASE("to_bitstring puts x_n first") {
  CHECK(to_bitstring(1, 3) == "001");
  CHECK(to_bitstring(6, 3) == "110");
}
