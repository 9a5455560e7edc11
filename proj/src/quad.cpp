#include "cubic/quad.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace cubic {

Int QuadOrder::norm(Int x, Int y) const { return x * x + r * x * y + n * y * y; }

QuadOrder quad_order(Int D) {
  if (!is_disc(D)) throw DomainError("not a discriminant: " + std::to_string(D));
  QuadOrder O;
  O.disc = D;
  auto [d0, f] = fundamental_part(D);
  O.fund = d0;
  O.conductor = f;
  O.r = mod(D, 2);
  O.n = (O.r * O.r - D) / 4;
  return O;
}

QuadElem<Int> multiply(const QuadOrder& O, const QuadElem<Int>& u, const QuadElem<Int>& v) {
  return {u.x * v.x - O.n * u.y * v.y, u.x * v.y + u.y * v.x + O.r * u.y * v.y};
}

QuadElem<Int> conjugate(const QuadOrder& O, const QuadElem<Int>& u) { return {u.x + O.r * u.y, -u.y}; }

bool QuadIdeal::contains(const QuadOrder&, const QuadElem<Int>& u) const {
  if (u.y % g != 0) return false;
  const Int k = u.y / g;  // multiple of g (b + xi)
  return (u.x - k * g * b) % (g * a) == 0;
}

std::string format_ideal(const QuadIdeal& I) {
  return std::to_string(I.g) + "," + std::to_string(I.a) + "," + std::to_string(I.b) + "@" + std::to_string(I.disc);
}

QuadIdeal parse_ideal(const std::string& text) {
  QuadIdeal I;
  char c1 = 0, c2 = 0, at = 0;
  std::istringstream in(text);
  if (!(in >> I.g >> c1 >> I.a >> c2 >> I.b >> at >> I.disc) || c1 != ',' || c2 != ',' || at != '@')
    throw DomainError("bad ideal: " + text);
  std::string rest;
  if (in >> rest) throw DomainError("bad ideal: " + text);
  const auto O = quad_order(I.disc);
  if (I.g < 1 || I.a < 1 || I.b < 0 || I.b >= I.a || (I.b * I.b + O.r * I.b + O.n) % I.a != 0)
    throw DomainError("not an ideal in normal form: " + text);
  return I;
}

QuadIdeal unit_ideal(Int D) { return {D, 1, 1, 0}; }

QuadIdeal ideal_from_lattice(const QuadOrder& O, const std::vector<QuadElem<Int>>& gens) {
  // Hermite normal form <(A, 0), (B, C)> on coordinates (x, y).
  std::vector<QuadElem<Int>> rows(gens);
  QuadElem<Int> pivot{0, 0};
  for (auto& row : rows) {
    while (row.y != 0) {
      if (pivot.y == 0 || abs_val(row.y) < abs_val(pivot.y)) std::swap(row, pivot);
      if (row.y == 0) break;
      const Int q = row.y / pivot.y;
      row.x -= q * pivot.x;
      row.y -= q * pivot.y;
    }
  }
  Int A = 0;
  for (const auto& row : rows) A = gcd_val(A, row.x);
  if (pivot.y == 0 || A == 0) throw DomainError("lattice is not of full rank");
  if (pivot.y < 0) pivot = {-pivot.x, -pivot.y};
  const Int C = pivot.y, B = mod(pivot.x, A);
  if (A % C != 0 || B % C != 0) throw DomainError("lattice is not an ideal");
  QuadIdeal I{O.disc, C, A / C, B / C};
  if ((I.b * I.b + O.r * I.b + O.n) % I.a != 0) throw DomainError("lattice is not an ideal");
  return I;
}

QuadIdeal ideal_product(const QuadOrder& O, const QuadIdeal& I, const QuadIdeal& J) {
  std::vector<QuadElem<Int>> gens;
  for (const auto& u : I.basis())
    for (const auto& v : J.basis()) gens.push_back(multiply(O, u, v));
  return ideal_from_lattice(O, gens);
}

QuadIdeal ideal_conjugate(const QuadOrder& O, const QuadIdeal& I) {
  return {I.disc, I.g, I.a, mod(-I.b - O.r, I.a)};
}

QuadIdeal primitive_part(const QuadIdeal& I) { return {I.disc, 1, I.a, I.b}; }

bool is_invertible(const QuadOrder& O, const QuadIdeal& I) {
  const Int c = (I.b * I.b + O.r * I.b + O.n) / I.a;
  return gcd_val(gcd_val(I.a, 2 * I.b + O.r), c) == 1;
}

bool is_invertible_by_product(const QuadOrder& O, const QuadIdeal& I) {
  const Int N = I.norm();
  return ideal_product(O, I, ideal_conjugate(O, I)) == QuadIdeal{O.disc, N, 1, 0};
}

std::vector<QuadIdeal> ideals_of_norm(Int D, Int n, bool invertible_only, Int budget) {
  if (n < 1) throw DomainError("norm must be positive");
  if (n > budget) throw BudgetExceeded("ideals_of_norm: norm " + std::to_string(n) + " exceeds budget");
  const auto O = quad_order(D);
  std::vector<QuadIdeal> out;
  for (Int g = 1; g * g <= n; ++g) {
    if (n % (g * g) != 0) continue;
    const Int a = n / (g * g);
    for (Int b = 0; b < a; ++b) {
      if ((b * b + O.r * b + O.n) % a != 0) continue;
      QuadIdeal I{D, g, a, b};
      if (invertible_only && !is_invertible(O, I)) continue;
      out.push_back(I);
    }
  }
  return out;
}

namespace {

// k <= (P + sqrt(D)) / Q for non-square D.
bool le_quadratic(Int k, Int P, Int Q, Int D) {
  const __int128 z = static_cast<__int128>(k) * Q - P;
  if (Q > 0) return z < 0 || z * z < D;
  return z >= 0 && z * z > D;
}

Int floor_quadratic(Int P, Int Q, Int D) {
  auto k = static_cast<Int>(std::floor((P + std::sqrt(static_cast<long double>(D))) / Q));
  while (!le_quadratic(k, P, Q, D)) --k;
  while (le_quadratic(k + 1, P, Q, D)) ++k;
  return k;
}

// 2x2 transformation tracked while reducing binary quadratic forms.
struct Mat {
  BigInt p = 1, q = 0, r = 0, s = 1;  // [[p, q], [r, s]]
  Mat operator*(const Mat& o) const {
    return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
  }
};

struct QF {
  Int A, B, C;
};

using Witness = std::optional<std::pair<BigInt, BigInt>>;

// Q(x, y) = +-1 for some (x, y), Q positive definite.
Witness unit_value_definite(QF f) {
  Mat M;
  for (;;) {
    if (abs_val(f.B) > f.A) {
      // x -> x + t y
      const Int t = floor_div(f.A - f.B, 2 * f.A);
      f = {f.A, f.B + 2 * f.A * t, f.A * t * t + f.B * t + f.C};
      M = M * Mat{1, t, 0, 1};
    } else if (f.A > f.C) {
      f = {f.C, -f.B, f.A};
      M = M * Mat{0, -1, 1, 0};
    } else {
      break;
    }
  }
  if (f.A == 1) return std::make_pair(M.p, M.r);
  return std::nullopt;
}

// Lagrange: every value m with |m| < sqrt(D)/2 properly represented by an indefinite form appears as
// a leading coefficient in its cycle of reduced forms.
Witness unit_value_indefinite(QF f, Int D) {
  const Int s = isqrt(D);
  auto reduced = [&](const QF& g) {
    return g.B > 0 && g.B <= s && s < 2 * abs_val(g.A) + g.B && 2 * abs_val(g.A) - g.B <= s;
  };
  auto rho = [&](const QF& g, Mat& M) {
    const Int c = abs_val(g.C);
    const Int k = c <= s ? floor_div(s + g.B, 2 * c) : floor_div(g.B + c, 2 * c);
    const Int t = k * sign_of(g.C);
    const Int B2 = -g.B + 2 * g.C * t;
    M = M * Mat{0, -1, 1, t};
    return QF{g.C, B2, (B2 * B2 - D) / (4 * g.C)};
  };
  Mat M;
  auto hit = [&](const QF& g) { return g.A == 1 || g.A == -1; };
  for (int i = 0; i < 100000 && !reduced(f); ++i) {
    if (hit(f)) return std::make_pair(M.p, M.r);
    f = rho(f, M);
  }
  if (!reduced(f)) throw std::logic_error("indefinite reduction did not terminate");
  const QF start = f;
  for (Int i = 0; i < 4 * D + 10; ++i) {
    if (hit(f)) return std::make_pair(M.p, M.r);
    f = rho(f, M);
    if (f.A == start.A && f.B == start.B && f.C == start.C) return std::nullopt;
  }
  throw std::logic_error("cycle of reduced forms did not close");
}

// D = m^2: factor a Q = L1 L2 over the integers.
Witness unit_value_square(QF f, Int m) {
  for (Int e : {1, -1})
    for (Int u : divisors(f.A))
      for (Int su : {u, -u}) {
        const Int v = e * f.A / su;
        if ((v - su) % m != 0) continue;
        const Int y = (v - su) / m;
        const Int num = su - ((f.B - m) / 2) * y;
        if (num % f.A != 0) continue;
        return std::make_pair(BigInt(num / f.A), BigInt(y));
      }
  return std::nullopt;
}

}  // namespace

QuadElem<BigInt> fundamental_unit(Int D) {
  if (D <= 0 || is_square(D) || !is_disc(D)) throw DomainError("fundamental unit needs a positive non-square discriminant");
  const auto O = quad_order(D);
  // Continued fraction of theta = (sqrt(D) - r) / 2; a unit x + y xi has x / y close to theta.
  Int P = -O.r, Q = 2;
  BigInt p1 = 1, q1 = 0;  // previous convergent, starting at p_{-1}/q_{-1}
  BigInt p0 = 0, q0 = 1;  // the one before, p_{-2}/q_{-2}
  for (int iter = 0; iter < 1000000; ++iter) {
    const Int a = floor_quadratic(P, Q, D);
    BigInt p = a * p1 + p0, q = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p;
    q1 = q;
    const BigInt N = p * p + O.r * p * q + O.n * q * q;
    if (q > 0 && (N == 1 || N == -1)) return {p, q};
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  throw std::logic_error("fundamental unit search did not terminate");
}

std::optional<QuadElem<BigInt>> principal_generator(const QuadOrder& O, const QuadIdeal& I) {
  if (!is_invertible(O, I)) throw DomainError("principality test needs an invertible ideal");
  const QF f{I.a, 2 * I.b + O.r, (I.b * I.b + O.r * I.b + O.n) / I.a};
  Witness w;
  if (O.disc < 0)
    w = unit_value_definite(f);
  else if (is_square(O.disc))
    w = unit_value_square(f, isqrt(O.disc));
  else
    w = unit_value_indefinite(f, O.disc);
  if (!w) return std::nullopt;
  const auto& [x, y] = *w;
  return QuadElem<BigInt>{I.g * (I.a * x + I.b * y), I.g * y};
}

bool is_principal(const QuadOrder& O, const QuadIdeal& I) { return principal_generator(O, I).has_value(); }

bool same_class(const QuadOrder& O, const QuadIdeal& I, const QuadIdeal& J) {
  return is_principal(O, primitive_part(ideal_product(O, I, ideal_conjugate(O, J))));
}

int PicGroup::power(int x, Int k) const {
  k = ((k % size()) + size()) % size();
  int out = 0;
  for (Int i = 0; i < k; ++i) out = op(out, x);
  return out;
}

int PicGroup::class_of(const QuadIdeal& I) const {
  const auto P = primitive_part(I);
  for (int k = 0; k < size(); ++k)
    if (same_class(order, P, reps[k])) return k;
  return -1;
}

Int default_generation_bound(Int D) {
  const Int root = isqrt(abs_val(D));
  const Int ceil_root = root * root == abs_val(D) ? root : root + 1;
  return std::max<Int>(6, 2 * ceil_root);
}

PicGroup picard_group(Int D, Int bound, Int budget) {
  if (abs_val(D) > budget) throw BudgetExceeded("picard_group: |D| exceeds budget");
  PicGroup G;
  G.order = quad_order(D);
  const auto& O = G.order;
  if (bound <= 0) bound = default_generation_bound(D);
  G.reps.push_back(unit_ideal(D));
  for (Int N = 2; N <= bound; ++N)
    for (const auto& I : ideals_of_norm(D, N, true, budget))
      if (I.g == 1 && G.class_of(I) < 0) G.reps.push_back(I);
  // Close under products (cheap insurance; the bound normally suffices).
  for (bool grew = true; grew;) {
    grew = false;
    const int h = G.size();
    for (int i = 0; i < h && !grew; ++i)
      for (int j = 0; j < h && !grew; ++j) {
        auto P = primitive_part(ideal_product(O, G.reps[i], G.reps[j]));
        if (G.class_of(P) < 0) {
          G.reps.push_back(P);
          grew = true;
        }
      }
  }
  const int h = G.size();
  G.table.assign(h, std::vector<int>(h, 0));
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) {
      G.table[i][j] = G.table[j][i] = G.class_of(ideal_product(O, G.reps[i], G.reps[j]));
      if (G.table[i][j] < 0) throw std::logic_error("Picard group not closed");
    }
  G.inverse.assign(h, -1);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      if (G.table[i][j] == 0) G.inverse[i] = j;
  return G;
}

int pic_3_torsion(const PicGroup& G) {
  int n = 0;
  for (int x = 0; x < G.size(); ++x) n += G.op(G.op(x, x), x) == 0;
  return n;
}

int pic_3_torsion(Int D) { return pic_3_torsion(picard_group(D)); }

bool is_cube_class(const PicGroup& G, int cls) {
  for (int x = 0; x < G.size(); ++x)
    if (G.op(G.op(x, x), x) == cls) return true;
  return false;
}

bool Mu3Char::trivial() const {
  return std::all_of(values.begin(), values.end(), [](int v) { return v == 0; });
}

std::vector<Mu3Char> mu3_characters(const PicGroup& G) {
  const int h = G.size();
  // Greedy generating set.
  std::vector<int> gens;
  std::vector<char> in_span(h, 0);
  in_span[0] = 1;
  for (int x = 0; x < h; ++x) {
    if (in_span[x]) continue;
    gens.push_back(x);
    std::deque<int> queue;
    for (int y = 0; y < h; ++y)
      if (in_span[y]) queue.push_back(y);
    while (!queue.empty()) {
      const int y = queue.front();
      queue.pop_front();
      for (int gen : gens) {
        const int z = G.op(y, gen);
        if (!in_span[z]) {
          in_span[z] = 1;
          queue.push_back(z);
        }
      }
    }
  }
  std::vector<Mu3Char> out;
  const size_t k = gens.size();
  Int total = 1;
  for (size_t i = 0; i < k; ++i) total *= 3;
  for (Int code = 0; code < total; ++code) {
    std::vector<int> gv(k);
    Int c = code;
    for (size_t i = 0; i < k; ++i) {
      gv[i] = static_cast<int>(c % 3);
      c /= 3;
    }
    std::vector<int> val(h, -1);
    val[0] = 0;
    std::deque<int> queue{0};
    bool ok = true;
    while (!queue.empty() && ok) {
      const int y = queue.front();
      queue.pop_front();
      for (size_t i = 0; i < k; ++i) {
        const int z = G.op(y, gens[i]);
        const int v = (val[y] + gv[i]) % 3;
        if (val[z] < 0) {
          val[z] = v;
          queue.push_back(z);
        } else if (val[z] != v) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int x = 0; x < h && ok; ++x)
      for (int y = 0; y < h && ok; ++y) ok = val[G.op(x, y)] == (val[x] + val[y]) % 3;
    if (ok) out.push_back({val});
  }
  return out;
}

QuadIdeal extend_ideal(const QuadOrder& from, const QuadOrder& to, const QuadIdeal& I) {
  if (from.fund != to.fund || from.conductor % to.conductor != 0) throw DomainError("target is not an overorder");
  const Int s = from.conductor / to.conductor;
  const Int k = (from.r - s * to.r) / 2;  // xi = k + s xi'
  std::vector<QuadElem<Int>> gens;
  for (const auto& u : I.basis()) {
    const QuadElem<Int> v{u.x + u.y * k, u.y * s};
    gens.push_back(v);
    gens.push_back(multiply(to, v, {0, 1}));
  }
  return ideal_from_lattice(to, gens);
}

std::vector<int> order_change_map(const PicGroup& from, const PicGroup& to) {
  std::vector<int> out;
  for (const auto& I : from.reps) {
    const int c = to.class_of(primitive_part(extend_ideal(from.order, to.order, I)));
    if (c < 0) throw std::logic_error("order change produced an unknown class");
    out.push_back(c);
  }
  return out;
}

Int conductor_of_char(const PicGroup& G, const Mu3Char& chi) {
  const Int f = G.order.conductor;
  for (Int c : divisors(f)) {
    if (c == f) return f;
    const auto target = picard_group(G.order.fund * c * c);
    const auto map = order_change_map(G, target);
    std::map<int, int> fibre;
    bool ok = true;
    for (int x = 0; x < G.size() && ok; ++x) {
      auto [it, fresh] = fibre.emplace(map[x], chi.values[x]);
      ok = fresh || it->second == chi.values[x];
    }
    if (ok) return c;
  }
  return f;
}

int unit_cube_classes(Int D) {
  if (!is_disc(D)) throw DomainError("not a discriminant");
  return (D == -3 || (D > 0 && !is_square(D))) ? 3 : 1;
}

}  // namespace cubic
