#include "doctest.h"

#include "cubic/rings.hpp"
#include "test_util.hpp"

using namespace cubic;

namespace {

const RingElement kOne{1, 0, 0}, kAlpha{0, 1, 0}, kBeta{0, 0, 1};

Form random_nondegenerate(testutil::Rng& rng, long long bound) {
  for (;;) {
    auto f = testutil::random_form<Int>(rng, bound);
    if (disc(f) != 0) return f;
  }
}

}  // namespace

TEST_CASE("multiplication table of t^3 - 1") {
  auto C = ring_from_form(Form{1, 0, 0, -1});
  CHECK(C.multiply(kAlpha, kAlpha) == kBeta);
  CHECK(C.multiply(kAlpha, kBeta) == kOne);
  CHECK(C.multiply(kBeta, kBeta) == kAlpha);
}

TEST_CASE("the disc 1 form gives Z^3: exactly 8 idempotents") {
  auto C = ring_from_form(Form{0, 1, 1, 0});
  int idempotents = 0;
  for (Int x0 = -3; x0 <= 3; ++x0)
    for (Int x1 = -3; x1 <= 3; ++x1)
      for (Int x2 = -3; x2 <= 3; ++x2) {
        RingElement x{x0, x1, x2};
        idempotents += C.multiply(x, x) == x;
      }
  CHECK(idempotents == 8);
}

TEST_CASE("tables are commutative, associative, and have the form's discriminant") {
  testutil::Rng rng(21);
  const RingElement basis[3] = {kOne, kAlpha, kBeta};
  for (int i = 0; i < 2000; ++i) {
    auto f = testutil::random_form<Int>(rng, 50);
    auto C = ring_from_form(f, i % 2 ? 1 : -1);
    REQUIRE(C.multiply(kAlpha, kBeta) == RingElement{-f.a * f.d, 0, 0});
    for (const auto& x : basis)
      for (const auto& y : basis) {
        REQUIRE(C.multiply(x, y) == C.multiply(y, x));
        for (const auto& z : basis) REQUIRE(C.multiply(C.multiply(x, y), z) == C.multiply(x, C.multiply(y, z)));
      }
    REQUIRE(C.discriminant() == BigInt(disc(f)));
    REQUIRE(C.trace(kOne) == 3);
    REQUIRE(C.trace(kAlpha) == -f.b);
    REQUIRE(C.trace(kBeta) == f.c);
    auto x = RingElement{testutil::uniform(rng, -9, 9), testutil::uniform(rng, -9, 9), testutil::uniform(rng, -9, 9)};
    REQUIRE(C.trace(x) == 3 * x.x0 - f.b * x.x1 + f.c * x.x2);
    REQUIRE(is_zmat_ring(C) == is_zmat(f));
  }
  CHECK(is_zmat_ring(ring_from_form(Form{1, 0, 0, -1})));
  CHECK_FALSE(is_zmat_ring(ring_from_form(Form{1, 1, 0, 0})));
  CHECK_THROWS_AS(ring_from_form(Form{1, 0, 0, -1}, 0), DomainError);
}

TEST_CASE("orientation flips the attached form") {
  auto C = ring_from_form(Form{1, 2, 3, 4}, -1);
  CHECK(C.oriented_form() == Form{-1, -2, -3, -4});
}

TEST_CASE("sublattice normal form") {
  CHECK(sublattice_spanned({{3, 0}, {0, 3}, {1, 1}}) == Sublattice{1, 1, 3});
  CHECK(sublattice_spanned({{2, 4}, {0, 6}, {4, 2}}) == Sublattice{2, 4, 6});
  CHECK_THROWS_AS(sublattice_spanned({{1, 1}, {2, 2}}), DomainError);
}

TEST_CASE("maximal Z-mat subring of Z^3") {
  auto C = ring_from_form(Form{0, 1, 1, 0});
  auto L = max_zmat_subring(C);
  CHECK(L.index() == 9);
  auto R = subring_ring(C, L);
  CHECK(disc(R.form) == 81);
  CHECK(is_zmat_ring(R));
  // Oracle: in coordinates where Z^3 is diagonal, the subring is {x1 = x2 = x3 mod 3}.
  // Idempotents of C are e1, e2, e3; check x in L iff its diagonal coordinates agree mod 3.
  std::vector<RingElement> idem;
  for (Int x0 = -3; x0 <= 3; ++x0)
    for (Int x1 = -3; x1 <= 3; ++x1)
      for (Int x2 = -3; x2 <= 3; ++x2) {
        RingElement x{x0, x1, x2};
        if (C.multiply(x, x) == x && !(x == RingElement{}) && !(x == kOne)) idem.push_back(x);
      }
  REQUIRE(idem.size() == 6);
  std::vector<RingElement> prim;  // primitive idempotents: those with trace 1
  for (const auto& e : idem)
    if (C.trace(e) == 1) prim.push_back(e);
  REQUIRE(prim.size() == 3);
  for (Int x0 = -4; x0 <= 4; ++x0)
    for (Int x1 = -4; x1 <= 4; ++x1)
      for (Int x2 = -4; x2 <= 4; ++x2) {
        RingElement x{x0, x1, x2};
        // diagonal coordinate i is the trace of x e_i
        Int y[3];
        for (int i = 0; i < 3; ++i) y[i] = C.trace(C.multiply(x, prim[i]));
        REQUIRE(L.contains(x) == (mod(y[0] - y[1], 3) == 0 && mod(y[1] - y[2], 3) == 0));
      }
}

TEST_CASE("maximal Z-mat subring properties") {
  testutil::Rng rng(3);
  for (int i = 0; i < 400; ++i) {
    auto f = random_nondegenerate(rng, 6);
    auto C = ring_from_form(f);
    auto L = max_zmat_subring(C);
    REQUIRE((L.index() == 1 || L.index() == 3 || L.index() == 9));
    REQUIRE(is_subring(C, L));
    REQUIRE(is_zmat_ring(subring_ring(C, L)));
    REQUIRE(L.contains(kAlpha * 3));
    REQUIRE(L.contains(kBeta * 3));
    if (is_zmat(f)) REQUIRE(L.index() == 1);
    // every Z-mat subring of 3-power index up to 9 lies inside L
    for (Int n : {3, 9})
      for (const auto& S : subrings_of_index(C, n))
        if (is_zmat_ring(subring_ring(C, S))) {
          REQUIRE(L.contains({0, S.d1, S.e}));
          REQUIRE(L.contains({0, 0, S.d2}));
        }
    if (is_maximal_at_p(f, 3)) REQUIRE((L.index() == 3) == (splitting_type(f, 3) == SplittingType::s1_21));
  }
}

TEST_CASE("local maximality examples") {
  CHECK(is_maximal_at_p(Form{1, 0, 0, -1}, 2));
  CHECK_FALSE(is_maximal_at_p(Form{0, 3, 3, 0}, 3));
  CHECK_FALSE(is_maximal_at_p(Form{1, 0, 0, -1}, 3));
  CHECK(superring_generators(ring_from_form(Form{1, 0, 0, -1}), 2).empty());
  CHECK_FALSE(superring_generators(ring_from_form(Form{1, 0, 0, -1}), 3).empty());
  CHECK_THROWS_AS(is_maximal_at_p(Form{0, 0, 1, 0}, 2), DomainError);
}

TEST_CASE("local maximality agrees with the superring oracle") {
  testutil::Rng rng(8);
  int nonmax = 0;
  for (int i = 0; i < 1500; ++i) {
    auto f = random_nondegenerate(rng, 12);
    for (Int p : {2, 3, 5}) {
      const auto C = ring_from_form(f);
      const bool oracle = superring_generators(C, p).empty() && !has_superring_p2(C, p);
      INFO(f << " p=" << p);
      REQUIRE(is_maximal_at_p(f, p) == oracle);
      nonmax += !oracle;
    }
  }
  CHECK(nonmax > 50);
}

TEST_CASE("splitting types") {
  CHECK(splitting_type(Form{0, 1, 1, 0}, 2) == SplittingType::s111);
  CHECK(splitting_type(Form{1, 0, 0, -1}, 5) == SplittingType::s12);
  CHECK(splitting_type(Form{1, 0, 0, -1}, 7) == SplittingType::s111);
  CHECK(splitting_type(Form{1, 0, 0, -1}, 2) == SplittingType::s12);
  CHECK(splitting_type(Form{1, 0, -1, -1}, 23) == SplittingType::s1_21);
  CHECK(splitting_type(Form{1, 0, -1, -1}, 2) == SplittingType::s3);
  CHECK_THROWS_AS(splitting_type(Form{1, 0, 0, -1}, 3), DomainError);
  for (auto t : {SplittingType::s111, SplittingType::s12, SplittingType::s3, SplittingType::s1_21,
                 SplittingType::s1_3})
    CHECK(parse_splitting_type(to_string(t)) == t);
}

TEST_CASE("root counts match the table's s1 for maximal forms") {
  testutil::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    auto f = random_nondegenerate(rng, 20);
    for (Int p : {2, 3, 5, 7, 11}) {
      if (!is_maximal_at_p(f, p)) continue;
      const int roots = count_roots_mod_p(f, p);
      switch (splitting_type(f, p)) {
        case SplittingType::s111: REQUIRE(roots == 3); break;
        case SplittingType::s12: REQUIRE(roots == 1); break;
        case SplittingType::s3: REQUIRE(roots == 0); break;
        case SplittingType::s1_21: REQUIRE(roots == 2); break;
        case SplittingType::s1_3: REQUIRE(roots == 1); break;
      }
    }
  }
}

TEST_CASE("subrings of small index") {
  auto Z3 = ring_from_form(Form{0, 1, 1, 0});
  auto one = subrings_of_index(Z3, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Sublattice{1, 0, 1});
  CHECK(subrings_of_index(Z3, 2).size() == 3);
  CHECK(subrings_of_index(Z3, 4).size() == 4);
  CHECK_THROWS_AS(subrings_of_index(Z3, 1000, 100), BudgetExceeded);
}

TEST_CASE("subring counts are multiplicative and subring forms scale the discriminant") {
  testutil::Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    auto f = random_nondegenerate(rng, 5);
    auto C = ring_from_form(f);
    const auto n2 = subrings_of_index(C, 2).size(), n3 = subrings_of_index(C, 3).size();
    const auto n4 = subrings_of_index(C, 4).size(), n5 = subrings_of_index(C, 5).size();
    REQUIRE(subrings_of_index(C, 6).size() == n2 * n3);
    REQUIRE(subrings_of_index(C, 12).size() == n4 * n3);
    REQUIRE(subrings_of_index(C, 10).size() == n2 * n5);
    for (Int n : {2, 3, 4, 6})
      for (const auto& L : subrings_of_index(C, n)) {
        auto R = subring_ring(C, L);
        REQUIRE(BigInt(disc(R.form)) == BigInt(disc(f)) * n * n);
      }
  }
}
