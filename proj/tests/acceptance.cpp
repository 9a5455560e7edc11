// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cubic/bridge.hpp"
#include "cubic/counting.hpp"
#include "test_util.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace cubic;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Int> discs_in(Int lo, Int hi) {
  std::vector<Int> out;
  for (Int d = lo; d <= hi; ++d)
    if (is_disc(d)) out.push_back(d);
  return out;
}

bool cubefree(Int m) {
  for (auto [p, e] : factorize(m))
    if (e >= 3) return false;
  return true;
}

std::string str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Outcome unit_disc_example() {
  const auto start = std::chrono::steady_clock::now();
  const auto c = lookup(class_numbers(1), 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = c.h == Rational(1, 6) && c.hhat == Rational(1, 2) && secs < 1.0;
  o.detail = "h(1)=" + str(c.h) + " hhat(1)=" + str(c.hhat) + " in " + std::to_string(secs) + "s";
  return o;
}

Outcome ohno_nakagawa() {
  const auto t = class_numbers(300);
  Outcome o;
  int n = 0;
  for (Int D : discs_in(-300, 300)) {
    const auto c = lookup(t, D);
    const Rational want = D > 0 ? 3 * c.h : c.h;
    ++n;
    if (c.hhat != want) {
      o.pass = false;
      o.detail = "first mismatch at " + std::to_string(D) + ": hhat=" + str(c.hhat) + " expected " + str(want);
      return o;
    }
  }
  o.detail = std::to_string(n) + " discriminants";
  return o;
}

Outcome recursion() {
  Outcome o;
  int n = 0;
  for (Int p : {2, 3})
    for (Int D : discs_in(-20, 20))
      for (const auto& r : check_recursion(D, p)) {
        ++n;
        if (!r.pass && o.pass) {
          o.pass = false;
          o.detail = "D=" + std::to_string(D) + " p=" + std::to_string(p) + (r.hhat ? " hhat: " : " h: ") + r.detail;
        }
      }
  if (o.pass) o.detail = std::to_string(n) + " identities";
  return o;
}

Outcome subring_oracle() {
  Outcome o;
  testutil::Rng rng(7);
  std::map<std::pair<Int, SplittingType>, int> covered;
  int rings = 0;
  for (int i = 0; i < 6000; ++i) {
    const auto f = testutil::random_form<Int>(rng, 6);
    if (disc(f) == 0) continue;
    for (Int p : {2, 3, 5}) {
      if (!is_maximal_at_p(f, p)) continue;
      const auto type = splitting_type(f, p);
      if (covered[{p, type}] >= 2) continue;
      ++covered[{p, type}];
      ++rings;
      if (s_sequence(type, p, 1) != count_roots_mod_p(f, p)) {
        o.pass = false;
        o.detail = "s1 is not the root count for " + format_form(f);
        return o;
      }
      const auto C = ring_from_form(f);
      Int pk = 1;
      for (int k = 1; k <= 3; ++k) {
        pk *= p;
        if (BigInt(subrings_of_index(C, pk).size()) != s_sequence(type, p, k)) {
          o.pass = false;
          o.detail = "oracle mismatch for " + format_form(f) + " at index " + std::to_string(pk);
          return o;
        }
      }
    }
  }
  const SplittingType types[] = {SplittingType::s111, SplittingType::s12, SplittingType::s3, SplittingType::s1_21,
                                 SplittingType::s1_3};
  const int table[5][2] = {{3, 4}, {1, 2}, {0, 1}, {2, 2}, {1, 1}};
  for (int i = 0; i < 5; ++i)
    for (Int p : {2, 3, 5}) {
      const auto type = types[i];
      if (s_sequence(type, p, 1) != table[i][0] || s_sequence(type, p, 2) != table[i][1]) {
        o.pass = false;
        o.detail = "s1, s2 differ from the table for " + to_string(type);
        return o;
      }
      for (int n = 0; n <= 12; ++n)
        if (s_closed_form(type, p, n) != s_sequence(type, p, n)) {
          o.pass = false;
          o.detail = "closed form differs for " + to_string(type) + " p=" + std::to_string(p) + " n=" + std::to_string(n);
          return o;
        }
    }
  o.pass = rings >= 20 && covered.size() == 15;
  o.detail = std::to_string(rings) + " rings over " + std::to_string(covered.size()) + " (p, type) pairs";
  return o;
}

Outcome theorem_rhs() {
  const auto t = class_numbers(27 * 150);
  Outcome o;
  int n = 0;
  for (Int D : discs_in(-150, 150)) {
    const auto r = check_rhs(D, t);
    ++n;
    if (!r.pass) return {false, r.detail};
  }
  o.detail = std::to_string(n) + " discriminants";
  return o;
}

Outcome theorem_lhs() {
  const auto t = class_numbers(150);
  const auto orbits = enumerate_orbits(150, false);
  int lhs = 0, fields = 0;
  for (Int D : discs_in(-150, 150)) {
    if (cubefree(quad_order(D).conductor)) {
      const auto r = check_lhs(D, t);
      ++lhs;
      if (!r.pass) return {false, r.detail};
    }
    const auto fp = check_fields_pic(D, orbits);
    ++fields;
    if (!fp.pass) return {false, fp.detail};
  }
  return {true, std::to_string(lhs) + " lhs and " + std::to_string(fields) + " field-count checks"};
}

Outcome self_balanced() {
  Outcome o;
  int n = 0, literal_differs = 0;
  for (const auto& f : enumerate_orbits(2000, true))
    for (int orient : {1, -1}) {
      const auto T = extract_triple(ring_from_form(f, orient));
      const auto J = triple_to_J(T);
      ++n;
      const Int g = gcd_val(gcd_val(T.t, T.s), T.r / 2);
      if (!gamma_I3_in_order(T) || balance_norm(T) != 1 || J.J.norm() != g)
        return {false, "fails at " + format_form(f) + " orientation " + std::to_string(orient)};
      if (gcd_val(gcd_val(T.t, T.s), T.r) != g) ++literal_differs;
    }
  o.detail = std::to_string(n) + " oriented orbits; N(J) = gcd(t, s, r/2), which differs from gcd(t, s, r) on " +
             std::to_string(literal_differs);
  return o;
}

Outcome scholz() {
  int n = 0;
  for (Int D : discs_in(-150, 150)) {
    if (!is_fundamental(D) || D == 1) continue;
    const auto r = check_scholz(D);
    ++n;
    if (!r.pass) return {false, r.detail};
  }
  return {true, std::to_string(n) + " fundamental discriminants"};
}

Outcome properties() {
  testutil::Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto f = testutil::random_form<BigInt>(rng, 1000);
    const auto g = testutil::random_unimodular<BigInt>(rng, 12);
    const auto h = act(g, f);
    if (disc(h) != disc(f) || is_zmat(h) != is_zmat(f)) return {false, "action invariance fails at sample " + std::to_string(i)};
  }

  const RingElement basis[3] = {RingElement{1, 0, 0}, RingElement{0, 1, 0}, RingElement{0, 0, 1}};
  int tables = 0;
  const auto forms = enumerate_orbits(3000, false);
  const auto zmat = enumerate_orbits(8100, true);
  for (const auto* list : {&forms, &zmat})
    for (const auto& f : *list) {
      if (!is_disc(static_cast<Int>(disc(f)))) return {false, "discriminant " + std::to_string(static_cast<Int>(disc(f))) + " not 0,1 mod 4"};
      for (int orient : {1, -1}) {
        const auto C = ring_from_form(f, orient);
        ++tables;
        for (const auto& x : basis)
          for (const auto& y : basis)
            for (const auto& z : basis)
              if (C.multiply(C.multiply(x, y), z) != C.multiply(x, C.multiply(y, z)))
                return {false, "non-associative table for " + format_form(f)};
      }
    }

  int groups = 0;
  for (Int D : discs_in(-400, 400)) {
    const auto G = picard_group(D);
    ++groups;
    const int h = G.size();
    for (int x = 0; x < h; ++x) {
      if (G.op(0, x) != x || G.op(x, G.inverse[x]) != 0) return {false, "Pic identity or inverse fails for " + std::to_string(D)};
      for (int y = 0; y < h; ++y) {
        if (G.op(x, y) != G.op(y, x)) return {false, "Pic not commutative for " + std::to_string(D)};
        for (int z = 0; z < h; ++z)
          if (G.op(G.op(x, y), z) != G.op(x, G.op(y, z))) return {false, "Pic not associative for " + std::to_string(D)};
      }
    }
  }
  return {true, "10000 action samples, " + std::to_string(forms.size() + zmat.size()) + " discriminants, " +
                    std::to_string(tables) + " tables, " + std::to_string(groups) + " Picard groups"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example h(1), hhat(1)", unit_disc_example},
      {"Ohno-Nakagawa up to 300", ohno_nakagawa},
      {"recursion for |D| <= 20, p in {2, 3}", recursion},
      {"subring oracle", subring_oracle},
      {"rhs count up to 150", theorem_rhs},
      {"lhs count and field count up to 150", theorem_lhs},
      {"self-balanced invariants up to 2000", self_balanced},
      {"Scholz reflection up to 150", scholz},
      {"property suites", properties},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.detail << "; " << secs << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
