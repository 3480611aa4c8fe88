#include <random>

#include "doctest.h"

#include "fgcert/wreath.hpp"

using namespace fgcert;

namespace {

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<int> raw;
  int target = len(rng);
  for (int i = 0; i < target; ++i)
    raw.push_back(gen(rng) * (sign(rng) ? 1 : -1));
  return Word(rank, raw);
}

ExtendedHom d2_hom(long long modulus) {
  FiniteQuotient q(CoverGraph(2, {{1, 0}, {0, 1}}));
  // Basis edges: (0,b), (1,a), (1,b); pick the non-tree a-edge.
  return ExtendedHom(q, {0, 1, 0}, modulus);
}

} // namespace

TEST_CASE("extension on the trivial quotient") {
  FiniteQuotient q(CoverGraph::rose(2));
  ExtendedHom hom(q, {1, 0}, 5);
  WreathElement image = hom.eval(parse_word(2, "a"));
  CHECK(image.base == std::vector<long long>{1});
  CHECK(image.base_only());
  CHECK(hom.eval(Word(2)).identity());
}

TEST_CASE("extension on an index-two quotient") {
  ExtendedHom hom = d2_hom(4);
  WreathElement image = hom.eval(parse_word(2, "aa"));
  CHECK(image.base_only());
  CHECK(image.base == std::vector<long long>{1, 1});

  WreathElement lift = hom.eval(parse_word(2, "a"));
  CHECK_FALSE(lift.base_only());
  CHECK(wreath_multiply(lift, lift) == image);
}

TEST_CASE("wreath group laws") {
  ExtendedHom hom = d2_hom(6);
  std::mt19937_64 rng(29);
  WreathElement id = wreath_identity(6, 2);
  for (int trial = 0; trial < 100; ++trial) {
    WreathElement x = hom.eval(random_word(rng, 2, 8));
    CHECK(wreath_multiply(x, id) == x);
    CHECK(wreath_multiply(id, x) == x);
    CHECK(wreath_multiply(x, wreath_inverse(x)) == id);
    CHECK(wreath_multiply(wreath_inverse(x), x) == id);
  }
  WreathElement p{6, {1, 0}, {0, 1}};
  WreathElement q{6, {0, 1}, {0, 1}};
  CHECK(wreath_multiply(p, q) == WreathElement{6, {1, 1}, {0, 1}});
  CHECK_THROWS_AS(wreath_multiply(p, wreath_identity(5, 2)), ShapeMismatch);
}

TEST_CASE("homomorphism law") {
  std::vector<CoverGraph> covers;
  covers.push_back(cyclic_cover(2, {1, 1}, 3));
  covers.push_back(regular_closure(marshall_hall_cover(parse_word(2, "abAB"))));
  covers.push_back(regular_closure(CoverGraph(2, {{1, 0, 2}, {1, 2, 0}})));
  std::mt19937_64 rng(31);
  for (const CoverGraph& cover : covers) {
    FiniteQuotient q(cover);
    HomologyBasis basis(cover);
    Functional phi(static_cast<size_t>(basis.betti()));
    for (std::size_t i = 0; i < phi.size(); ++i)
      phi[i] = static_cast<long long>(i % 4) - 1;
    ExtendedHom hom(q, phi, 6);
    for (int trial = 0; trial < 150; ++trial) {
      Word g = random_word(rng, 2, 8);
      Word h = random_word(rng, 2, 8);
      CHECK(hom.eval(concat(g, h)) ==
            wreath_multiply(hom.eval(g), hom.eval(h)));
    }
    // Subgroup elements map into the base with the conjugated values.
    for (int trial = 0; trial < 40; ++trial) {
      Word w = random_word(rng, 2, 6);
      Word k = power(w, cover.degree_of(w));
      WreathElement image = hom.eval(k);
      REQUIRE(image.base_only());
      for (int v = 0; v < q.size(); ++v)
        CHECK(image.base[static_cast<size_t>(v)] ==
              hom.sigma(conjugate(k, q.reps()[static_cast<size_t>(v)])));
    }
  }
}

TEST_CASE("wreath orders") {
  CHECK(wreath_order(wreath_identity(6, 3)) == 1);
  // Base-only constant 4 mod 6 has additive order 3.
  CHECK(wreath_order(WreathElement{6, {4, 4, 4}, {0, 1, 2}}) == 3);
  // A 2-cycle on top whose square sums to a generator mod 5.
  CHECK(wreath_order(WreathElement{5, {1, 0}, {1, 0}}) == 10);
}

TEST_CASE("base conjugacy by translation") {
  std::vector<Permutation> z2{{0, 1}, {1, 0}};
  WreathElement x{2, {1, 0}, {0, 1}};
  WreathElement y{2, {0, 1}, {0, 1}};
  WreathElement z{2, {1, 1}, {0, 1}};
  CHECK(base_conjugate_test(x, x, z2));
  CHECK(base_conjugate_test(x, y, z2));
  CHECK_FALSE(base_conjugate_test(x, z, z2));
  CHECK_THROWS_AS(base_conjugate_test(x, WreathElement{2, {1, 0}, {1, 0}}, z2),
                  ShapeMismatch);

  // Agreement with exhaustive conjugation in (Z/2) wr (Z/2).
  std::vector<WreathElement> group;
  for (int b0 : {0, 1})
    for (int b1 : {0, 1})
      for (const Permutation& t : z2)
        group.push_back(
            WreathElement{2, {static_cast<long long>(b0),
                              static_cast<long long>(b1)}, t});
  for (int u0 : {0, 1})
    for (int u1 : {0, 1})
      for (int v0 : {0, 1})
        for (int v1 : {0, 1}) {
          WreathElement phi1{2, {u0, u1}, {0, 1}};
          WreathElement phi2{2, {v0, v1}, {0, 1}};
          bool brute = false;
          for (const WreathElement& g : group)
            brute = brute ||
                    wreath_multiply(wreath_multiply(g, phi1),
                                    wreath_inverse(g)) == phi2;
          CHECK(base_conjugate_test(phi1, phi2, z2) == brute);
        }
}

TEST_CASE("retraction value gcd") {
  FiniteQuotient rose(CoverGraph::rose(2));
  ExtendedHom hom(rose, {1, 0}, 7);
  CHECK(hom.d_value(parse_word(2, "a")) == 1);
  CHECK(hom.d_value(parse_word(2, "aa")) == 2);
  CHECK(hom.d_value(parse_word(2, "b")) == 0);
  CHECK_THROWS_AS(hom.d_value(Word(2)), TrivialWord);
}

TEST_CASE("order formula") {
  CHECK(predicted_order(1, 7, 1) == 7);
  CHECK(predicted_order(3, 6, 0) == 3);
  CHECK(predicted_order(2, 6, 4) == 6);

  // Direct computation agrees on a constructed instance with n=2, d=4.
  WreathElement x{6, {4, 0}, {1, 0}};
  CHECK(wreath_order(x) == predicted_order(2, 6, 4));

  // And across extension homomorphisms on a quotient.
  ExtendedHom hom = d2_hom(4);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    Word b = random_word(rng, 2, 8);
    if (b.trivial())
      continue;
    long long n = hom.quotient().cover().degree_of(b);
    CHECK(wreath_order(hom.eval(b)) ==
          predicted_order(n, 4, hom.d_value(b)));
  }
}
