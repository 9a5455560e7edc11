#include "doctest.h"

#include "cubic/forms.hpp"
#include "test_util.hpp"

#include <map>
#include <set>

using namespace cubic;

TEST_CASE("discriminant values") {
  CHECK(disc(Form{1, 0, 0, -1}) == -27);
  CHECK(disc(Form{0, 0, 0, 0}) == 0);
  CHECK(disc(Form{0, 1, 1, 0}) == 1);
  CHECK(disc(Form{1, 0, -1, -1}) == -23);
  CHECK(disc(Form{1, -1, -2, 1}) == 49);
}

TEST_CASE("twisted action") {
  Form f{2, -3, 5, 7};
  CHECK(act(Matrix2{}, f) == f);
  CHECK(act(Matrix2{0, 1, 1, 0}, f) == Form{-7, -5, 3, -2});
  CHECK(act(Matrix2{-1, 0, 0, -1}, f) == -f);
  CHECK_THROWS_AS(act(Matrix2{2, 0, 0, 1}, f), DomainError);
}

TEST_CASE("action is a group action and preserves disc and Z-mat (BigInt, 10^4 samples)") {
  testutil::Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    BigForm f = testutil::random_form<BigInt>(rng, 40);
    auto g1 = testutil::random_unimodular<BigInt>(rng, 4);
    auto g2 = testutil::random_unimodular<BigInt>(rng, 4);
    auto h1 = act(g1, f);
    REQUIRE(act(g2, h1) == act(g2 * g1, f));
    REQUIRE(disc(h1) == disc(f));
    REQUIRE(is_zmat(h1) == is_zmat(f));
    auto D = disc(f);
    if (D != 0) {
      BigInt r = D % 4;
      if (r < 0) r += 4;
      REQUIRE((r == 0 || r == 1));
    }
  }
}

TEST_CASE("Z-mat predicate") {
  CHECK(is_zmat(Form{1, 3, -3, 2}));
  CHECK_FALSE(is_zmat(Form{1, 1, 0, 0}));
}

TEST_CASE("Hessian") {
  auto h = hessian(Form{1, 0, 0, -1});
  CHECK(h.t == 0);
  CHECK(h.s == 9);
  CHECK(h.r == 0);
  CHECK(h.content == 9);
  auto z = hessian(Form{0, 0, 0, 0});
  CHECK((z.t == 0 && z.s == 0 && z.r == 0));
}

TEST_CASE("Hessian is covariant: H(g.phi) = H(phi) o g") {
  testutil::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    BigForm f = testutil::random_form<BigInt>(rng, 30);
    auto g = testutil::random_unimodular<BigInt>(rng, 5);
    auto h = hessian(f);
    auto hg = hessian(act(g, f));
    // substitute (x, y) -> (px + ry, qx + sy) into t x^2 + s x y + r y^2
    BigInt T = h.t * g.p * g.p + h.s * g.p * g.q + h.r * g.q * g.q;
    BigInt S = 2 * h.t * g.p * g.r + h.s * (g.p * g.s + g.q * g.r) + 2 * h.r * g.q * g.s;
    BigInt R = h.t * g.r * g.r + h.s * g.r * g.s + h.r * g.s * g.s;
    REQUIRE(hg.t == T);
    REQUIRE(hg.s == S);
    REQUIRE(hg.r == R);
    REQUIRE(hg.content == h.content);
  }
}

TEST_CASE("canonicalize is an orbit invariant and idempotent") {
  testutil::Rng rng(7);
  int tested = 0;
  while (tested < 3000) {
    Form f = testutil::random_form<Int>(rng, 12);
    if (disc(f) == 0) continue;
    auto g = testutil::random_unimodular<Int>(rng, 3);
    auto c = canonicalize(f);
    REQUIRE(canonicalize(act(g, f)) == c);
    REQUIRE(canonicalize(c) == c);
    REQUIRE(reduction_status(c) != Reduced::no);
    REQUIRE(disc(c) == disc(f));
    ++tested;
  }
  // the swap fixes the orbit of t^3 - 1
  CHECK(canonicalize(Form{1, 0, 0, -1}) == canonicalize(act(Matrix2{0, 1, 1, 0}, Form{1, 0, 0, -1})));
  CHECK_THROWS_AS(canonicalize(Form{1, 2, 1, 0} * 0), DomainError);
}

TEST_CASE("reduction terminates when the covariant sits at v = 1, w < 1") {
  Form f{-20, -30, -16, -3};
  auto r = reduce(f);
  CHECK(reduction_status(r.form) != Reduced::no);
  CHECK(act(r.transform, f) == r.form);
}

TEST_CASE("canonicalize agrees with a brute-force equivalence search") {
  // Small forms of small discriminant; equivalence decided by searching matrices
  // with entries in [-6, 6].
  std::vector<Form> sample;
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -2; b <= 2; ++b)
      for (Int c = -2; c <= 2; ++c)
        for (Int d = -2; d <= 2; ++d) {
          Form f{a, b, c, d};
          auto D = disc(f);
          if (D != 0 && D >= -60 && D <= 60) sample.push_back(f);
        }
  const auto mats = testutil::matrices_up_to(6);
  std::map<Form, Form> canon;
  for (const auto& f : sample) canon[f] = canonicalize(f);
  int pairs = 0;
  for (size_t i = 0; i < sample.size(); i += 3) {
    for (size_t j = i + 1; j < sample.size(); j += 5) {
      const auto &f = sample[i], &h = sample[j];
      if (disc(f) != disc(h)) continue;
      bool equivalent = false;
      for (const auto& g : mats)
        if (act(g, f) == h) {
          equivalent = true;
          break;
        }
      INFO(f << " vs " << h);
      REQUIRE(equivalent == (canon[f] == canon[h]));
      ++pairs;
    }
  }
  CHECK(pairs > 100);
}

TEST_CASE("stabilizer orders") {
  CHECK(stabilizer_order(Form{0, 1, 1, 0}) == 6);
  CHECK(stabilizer_order(Form{1, 0, 0, -1}) == 2);
  CHECK(stabilizer_order(Form{1, 0, -1, -1}) == 1);  // x^3 - x - 1, non-Galois field
  CHECK(stabilizer_order(Form{1, -1, -2, 1}) == 3);  // cyclic cubic field of conductor 7
  CHECK_THROWS_AS(stabilizer_order(Form{0, 0, 1, 0}), DomainError);
}

TEST_CASE("stabilizer: larger-bound sweep, group law and divisibility") {
  const auto mats = testutil::matrices_up_to(4);
  std::set<Form> seen;
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -3; b <= 3; ++b)
      for (Int c = -3; c <= 3; ++c)
        for (Int d = -3; d <= 3; ++d) {
          Form f{a, b, c, d};
          if (disc(f) == 0) continue;
          auto cf = canonicalize(f);
          if (!seen.insert(cf).second) continue;
          int brute = 0;
          for (const auto& g : mats) brute += act(g, cf) == cf;
          const int n = stabilizer_order(cf);
          REQUIRE(n == brute);
          REQUIRE(6 % n == 0);
          auto stab = stabilizer(f);
          REQUIRE(static_cast<int>(stab.size()) == stabilizer_order(f));
          for (const auto& x : stab) {
            REQUIRE(act(x, f) == f);
            for (const auto& y : stab) {
              auto xy = x * y;
              bool closed = false;
              for (const auto& z : stab) closed = closed || z == xy;
              REQUIRE(closed);
            }
          }
        }
  CHECK(seen.size() > 150);
}

TEST_CASE("form serialization") {
  CHECK(parse_form("1,0,0,-1") == Form{1, 0, 0, -1});
  CHECK(parse_form(" 2, -3 ,4,5") == Form{2, -3, 4, 5});
  CHECK(format_form(Form{0, 1, 1, 0}) == "0,1,1,0");
  CHECK_THROWS_AS(parse_form("1,2,3"), DomainError);
  CHECK_THROWS_AS(parse_form("1,2,x,3"), DomainError);
}
