#include "cubic/rings.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cubic {

std::string to_string(SplittingType t) {
  switch (t) {
    case SplittingType::s111: return "111";
    case SplittingType::s12: return "12";
    case SplittingType::s3: return "3";
    case SplittingType::s1_21: return "1^21";
    case SplittingType::s1_3: return "1^3";
  }
  return "?";
}

SplittingType parse_splitting_type(const std::string& s) {
  for (auto t : {SplittingType::s111, SplittingType::s12, SplittingType::s3, SplittingType::s1_21,
                 SplittingType::s1_3})
    if (to_string(t) == s) return t;
  throw DomainError("unknown splitting type: " + s);
}

RingElement CubicRing::multiply(const RingElement& x, const RingElement& y) const {
  const Int a = form.a, b = form.b, c = form.c, d = form.d;
  const Int aa = x.x1 * y.x1;
  const Int ab = x.x1 * y.x2 + x.x2 * y.x1;
  const Int bb = x.x2 * y.x2;
  RingElement r{x.x0 * y.x0, x.x0 * y.x1 + x.x1 * y.x0, x.x0 * y.x2 + x.x2 * y.x0};
  r = r + RingElement{-a * c, -b, a} * aa;
  r = r + RingElement{-a * d, 0, 0} * ab;
  r = r + RingElement{-b * d, -d, c} * bb;
  return r;
}

Int CubicRing::trace(const RingElement& x) const {
  return multiply(x, {1, 0, 0}).x0 + multiply(x, {0, 1, 0}).x1 + multiply(x, {0, 0, 1}).x2;
}

BigInt CubicRing::discriminant() const {
  const RingElement e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  BigInt t[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = trace(multiply(e[i], e[j]));
  return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) - t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
         t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
}

CubicRing ring_from_form(const Form& form, int orientation) {
  if (orientation != 1 && orientation != -1) throw DomainError("orientation must be +1 or -1");
  return {form, orientation};
}

bool is_zmat_ring(const CubicRing& C) {
  // 3 | tr(1) always; the trace is linear, so the other two basis elements decide.
  return C.trace({0, 1, 0}) % 3 == 0 && C.trace({0, 0, 1}) % 3 == 0;
}

bool Sublattice::contains(const RingElement& x) const {
  if (x.x1 % d1 != 0) return false;
  return (x.x2 - (x.x1 / d1) * e) % d2 == 0;
}

Sublattice sublattice_spanned(const std::vector<std::array<Int, 2>>& gens) {
  std::vector<std::array<Int, 2>> rows(gens);
  // Euclid on the first coordinate until one row carries it.
  std::array<Int, 2> pivot{0, 0};
  for (auto& r : rows) {
    while (r[0] != 0) {
      if (pivot[0] == 0 || abs_val(r[0]) < abs_val(pivot[0])) std::swap(r, pivot);
      if (r[0] == 0) break;
      const Int q = r[0] / pivot[0];
      r[0] -= q * pivot[0];
      r[1] -= q * pivot[1];
    }
  }
  Int d2 = 0;
  for (const auto& r : rows) d2 = gcd_val(d2, r[1]);
  if (pivot[0] == 0 || d2 == 0) throw DomainError("sublattice is not of full rank");
  if (pivot[0] < 0) pivot = {-pivot[0], -pivot[1]};
  return {pivot[0], mod(pivot[1], d2), d2};
}

namespace {

RingElement u_of(const Sublattice& L) { return {0, L.d1, L.e}; }
RingElement v_of(const Sublattice& L) { return {0, 0, L.d2}; }

// Coordinates of y (assumed in L) on the basis [1, u, v].
RingElement coords_in(const Sublattice& L, const RingElement& y) {
  const Int k = y.x1 / L.d1;
  return {y.x0, k, (y.x2 - k * L.e) / L.d2};
}

}  // namespace

bool is_subring(const CubicRing& C, const Sublattice& L) {
  const auto u = u_of(L), v = v_of(L);
  return L.contains(C.multiply(u, u)) && L.contains(C.multiply(u, v)) && L.contains(C.multiply(v, v));
}

CubicRing subring_ring(const CubicRing& C, const Sublattice& L) {
  if (!is_subring(C, L)) throw DomainError("sublattice is not a subring");
  auto u = u_of(L), v = v_of(L);
  const auto uv = coords_in(L, C.multiply(u, v));
  // (u - q)(v - p) is an integer when uv = m + p u + q v.
  u = u - RingElement{uv.x2, 0, 0};
  v = v - RingElement{uv.x1, 0, 0};
  const auto uu = coords_in(L, C.multiply(u, u));
  const auto vv = coords_in(L, C.multiply(v, v));
  // The shift by an integer does not change coordinates on u and v, so reuse coords_in.
  return {Form{uu.x2, -uu.x1, vv.x2, -vv.x1}, C.orientation};
}

Sublattice max_zmat_subring(const CubicRing& C) {
  if (disc(C.form) == 0) throw DomainError("degenerate ring");
  std::vector<std::array<Int, 2>> gens{{3, 0}, {0, 3}};
  for (Int x1 = 0; x1 < 3; ++x1)
    for (Int x2 = 0; x2 < 3; ++x2) {
      const RingElement x{0, x1, x2};
      const auto cube = C.multiply(x, C.multiply(x, x));
      if (mod(cube.x1, 3) == 0 && mod(cube.x2, 3) == 0) gens.push_back({x1, x2});
    }
  return sublattice_spanned(gens);
}

namespace {

// Coefficients of f(t, 1) mod p, highest degree first.
std::array<Int, 4> dehomogenize(const Form& f, Int p) {
  return {mod(f.a, p), mod(f.b, p), mod(f.c, p), mod(f.d, p)};
}

// Multiplicities of the roots of f in P^1(F_p); empty if f has none.
std::vector<int> root_multiplicities(const Form& f, Int p) {
  auto c = dehomogenize(f, p);
  if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) throw DomainError("form vanishes mod p");
  std::vector<Int> poly(c.begin(), c.end());
  while (!poly.empty() && poly.front() == 0) poly.erase(poly.begin());
  std::vector<int> out;
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 3) out.push_back(3 - deg);
  for (Int t = 0; t < p && poly.size() > 1; ++t) {
    int m = 0;
    for (;;) {
      // Synthetic division by (x - t).
      std::vector<Int> q(poly.size() - 1);
      Int acc = 0;
      for (size_t i = 0; i + 1 < poly.size(); ++i) {
        acc = static_cast<Int>((static_cast<__int128>(acc) * t + poly[i]) % p);
        q[i] = acc;
      }
      const Int rem = static_cast<Int>((static_cast<__int128>(acc) * t + poly.back()) % p);
      if (rem != 0) break;
      poly = q;
      ++m;
      if (poly.size() == 1) break;
    }
    if (m > 0) out.push_back(m);
  }
  return out;
}

}  // namespace

int count_roots_mod_p(const Form& f, Int p) {
  try {
    return static_cast<int>(root_multiplicities(f, p).size());
  } catch (const DomainError&) {
    return -1;
  }
}

SplittingType splitting_type(const Form& f, Int p) {
  if (!is_maximal_at_p(f, p)) throw DomainError("splitting type requires a ring maximal at p");
  auto m = root_multiplicities(f, p);
  std::sort(m.begin(), m.end());
  const int total = std::accumulate(m.begin(), m.end(), 0);
  if (total == 0) return SplittingType::s3;
  if (total == 1) return SplittingType::s12;
  if (m.size() == 3) return SplittingType::s111;
  if (m.size() == 2) return SplittingType::s1_21;
  return SplittingType::s1_3;
}

bool is_maximal_at_p(const Form& f, Int p) {
  if (disc(f) == 0) throw DomainError("degenerate form");
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (f.a % p == 0 && f.b % p == 0 && f.c % p == 0 && f.d % p == 0) return false;
  auto bad = [&](const Form& g) { return g.a % (p * p) == 0 && g.b % p == 0; };
  if (f.a % p == 0 && bad(f)) return false;
  for (Int t = 0; t < p; ++t) {
    if (evaluate(f, t, Int(1)) % p != 0) continue;
    if (bad(act(Matrix2{t, 1, -1, 0}, f))) return false;
  }
  return true;
}

std::vector<RingElement> superring_generators(const CubicRing& C, Int p) {
  auto reduce = [p](RingElement x) { return RingElement{mod(x.x0, p), mod(x.x1, p), mod(x.x2, p)}; };
  auto is_zero = [](const RingElement& x) { return x.x0 == 0 && x.x1 == 0 && x.x2 == 0; };
  std::vector<RingElement> out;
  std::set<std::array<Int, 3>> seen;
  for (Int x0 = 0; x0 < p; ++x0)
    for (Int x1 = 0; x1 < p; ++x1)
      for (Int x2 = 0; x2 < p; ++x2) {
        const RingElement x{x0, x1, x2};
        if (is_zero(x)) continue;
        // x e_i must lie in pC + Z x.
        bool ok = true;
        for (const RingElement e : {RingElement{0, 1, 0}, RingElement{0, 0, 1}}) {
          const auto xe = C.multiply(x, e);
          bool found = false;
          for (Int k = 0; k < p && !found; ++k) found = is_zero(reduce(xe - x * k));
          ok = ok && found;
        }
        if (!ok) continue;
        // x^2 must lie in p^2 C + p Z x.
        const auto xx = C.multiply(x, x);
        bool found = false;
        for (Int k = 0; k < p && !found; ++k) {
          const auto r = xx - x * (p * k);
          found = r.x0 % (p * p) == 0 && r.x1 % (p * p) == 0 && r.x2 % (p * p) == 0;
        }
        if (!found) continue;
        // Identify the lattice by the line through x in (Z/p)^3.
        RingElement norm = x;
        const Int lead = x.x0 ? x.x0 : (x.x1 ? x.x1 : x.x2);
        Int inv = 1;
        while (mod(lead * inv, p) != 1) ++inv;
        norm = reduce(x * inv);
        if (seen.insert({norm.x0, norm.x1, norm.x2}).second) out.push_back(norm);
      }
  return out;
}

bool has_superring_p2(const CubicRing& C, Int p) {
  auto divisible = [](const RingElement& r, Int m) { return r.x0 % m == 0 && r.x1 % m == 0 && r.x2 % m == 0; };
  // z lies in m C + s (Z x + Z y) for some coefficients mod p
  auto in_span = [&](const RingElement& z, const RingElement& x, const RingElement& y, Int m, Int s) {
    for (Int k = 0; k < p; ++k)
      for (Int l = 0; l < p; ++l)
        if (divisible(z - x * (s * k) - y * (s * l), m)) return true;
    return false;
  };
  // Row-reduced bases of the 2-dimensional subspaces of F_p^3.
  std::vector<std::pair<RingElement, RingElement>> planes;
  for (Int u = 0; u < p; ++u)
    for (Int v = 0; v < p; ++v) planes.push_back({{1, 0, u}, {0, 1, v}});
  for (Int u = 0; u < p; ++u) planes.push_back({{1, u, 0}, {0, 0, 1}});
  planes.push_back({{0, 1, 0}, {0, 0, 1}});
  for (const auto& [x, y] : planes) {
    bool ok = true;
    for (const RingElement e : {RingElement{0, 1, 0}, RingElement{0, 0, 1}})
      ok = ok && in_span(C.multiply(x, e), x, y, p, 1) && in_span(C.multiply(y, e), x, y, p, 1);
    ok = ok && in_span(C.multiply(x, x), x, y, p * p, p) && in_span(C.multiply(x, y), x, y, p * p, p) &&
         in_span(C.multiply(y, y), x, y, p * p, p);
    if (ok) return true;
  }
  return false;
}

std::vector<Sublattice> subrings_of_index(const CubicRing& C, Int n, Int budget) {
  if (n < 1) throw DomainError("index must be positive");
  if (disc(C.form) == 0) throw DomainError("degenerate ring");
  const auto divs = divisors(n);
  const Int candidates = std::accumulate(divs.begin(), divs.end(), Int(0));
  if (candidates > budget) throw BudgetExceeded("subrings_of_index: " + std::to_string(candidates) + " candidates");
  std::vector<Sublattice> out;
  for (Int d1 : divs) {
    const Int d2 = n / d1;
    for (Int e = 0; e < d2; ++e) {
      Sublattice L{d1, e, d2};
      if (is_subring(C, L)) out.push_back(L);
    }
  }
  return out;
}

}  // namespace cubic
