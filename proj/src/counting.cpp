#include "cubic/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>

namespace cubic {

Int default_budget() {
  if (const char* env = std::getenv("CUBIC_BUDGET")) {
    try {
      size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("CUBIC_BUDGET is not a positive integer: ") + env);
  }
  return kDefaultBudget;
}

namespace {

struct Scan {
  Int X;
  bool zmat;
  int sign;  // the half of the domain this scan covers

  bool wanted(const Form& f) const {
    if (zmat && !is_zmat(f)) return false;
    const auto D = disc(f);
    if (D == 0 || D > X || D < -X) return false;
    if ((D > 0) != (sign > 0)) return false;
    const auto st = reduction_status(f);
    if (st == Reduced::no) return false;
    if (f.a < 0 || (f.a == 0 && f.b <= 0)) return false;
    return canonicalize(f) == f;
  }
};

Int ceil_ld(long double x) { return static_cast<Int>(std::ceil(x)); }
Int floor_ld(long double x) { return static_cast<Int>(std::floor(x)); }

// Values of b scanned by a shard; b (or its index) is the sharding key.
bool mine(Int b, int shard, int shards) { return mod(b, shards) == shard; }

// Step for b and c: Z-mat forms have 3 | b and 3 | c.
Int first_from(Int lo, Int step) { return step == 1 ? lo : ceil_div(lo, step) * step; }

void scan_positive(const Scan& s, int shard, int shards, std::vector<Form>& out) {
  const Int step = s.zmat ? 3 : 1;
  const Int S = isqrt(s.X);  // the Hessian's leading coefficient P satisfies P^2 <= disc
  const Int S4 = isqrt(S);
  // a = 0: phi = y (b x^2 + c x y + d y^2), P = b^2.
  for (Int b = first_from(1, step); b <= S4 + 1; b += step) {
    if (!mine(b, shard, shards)) continue;
    for (Int c = 0; c <= b; c += step) {
      const Int dmax = floor_div(c * c - b * b, 3 * b);
      const Int dmin = ceil_div(c * c * b * b - s.X, 4 * b * b * b);
      for (Int d = dmin; d <= dmax; ++d) {
        Form f{0, b, c, d};
        if (s.wanted(f)) out.push_back(f);
      }
    }
  }
  // a > 0: 27 a^2 disc <= 4 P^3 and disc >= P^2 give 27 a^2 <= 4 P.
  for (Int a = 1; 27 * a * a <= 4 * S; ++a) {
    for (Int b = first_from(-S4 - 1, step); b <= (3 * a) / 2 + S4 + 1; b += step) {
      if (!mine(b, shard, shards)) continue;
      // P = b^2 - 3ac in [1, S]
      const Int cmin = first_from(ceil_div(b * b - S, 3 * a), step);
      const Int cmax = floor_div(b * b - 1, 3 * a);
      for (Int c = cmin; c <= cmax; c += step) {
        const Int P = b * b - 3 * a * c;
        // Q = bc - 9ad in [0, P]
        const Int dmin = ceil_div(b * c - P, 9 * a);
        const Int dmax = floor_div(b * c, 9 * a);
        for (Int d = dmin; d <= dmax; ++d) {
          Form f{a, b, c, d};
          if (s.wanted(f)) out.push_back(f);
        }
      }
    }
  }
}

void scan_negative(const Scan& s, int shard, int shards, std::vector<Form>& out) {
  const Int step = s.zmat ? 3 : 1;
  const long double X = static_cast<long double>(s.X);
  // a = 0: 0 <= c <= b <= d and b^2 (4bd - c^2) <= X.
  for (Int b = first_from(1, step); 3 * b * b * b * b <= s.X; b += step) {
    if (!mine(b, shard, shards)) continue;
    for (Int c = 0; c <= b; c += step) {
      const Int dmax = floor_div(s.X + b * b * c * c, 4 * b * b * b);
      for (Int d = b; d <= dmax; ++d) {
        Form f{0, b, c, d};
        if (s.wanted(f)) out.push_back(f);
      }
    }
  }
  // a > 0: phi = a (x - theta y)(x^2 + v x y + w y^2) with 0 <= v <= 1 <= w.
  // |disc| = a^4 q(theta)^2 (4w - v^2) with q(theta) >= (1 + theta^2) / 2 and q(theta) >= w - 1/4.
  for (Int a = 1; 3 * a * a * a * a <= 4 * s.X; ++a) {
    const long double A = static_cast<long double>(a);
    const long double T = std::sqrt(std::max<long double>(0, 2 * std::sqrt(X / 3) / (A * A) - 1));
    const long double W = (std::cbrt(16 * X / (A * A * A * A)) + 1) / 4;
    const Int bmin = floor_ld(-A * T) - 1, bmax = ceil_ld(A * (1 + T)) + 1;
    const Int cmin = floor_ld(A * (1 - T)) - 1, cmax = ceil_ld(A * (W + T)) + 1;
    const Int dbound = ceil_ld(A * T * W) + 1;
    for (Int b = first_from(bmin, step); b <= bmax; b += step) {
      if (!mine(b, shard, shards)) continue;
      for (Int c = first_from(cmin, step); c <= cmax; c += step) {
        // disc(d) = -27 a^2 d^2 + (18abc - 4b^3) d + (b^2 c^2 - 4ac^3) >= -X
        const long double B = static_cast<long double>(b), C = static_cast<long double>(c);
        const long double qa = 27 * A * A, qb = -(18 * A * B * C - 4 * B * B * B),
                          qc = -(B * B * C * C - 4 * A * C * C * C) - X;
        const long double dsc = qb * qb - 4 * qa * qc;
        if (dsc < 0) continue;
        const long double root = std::sqrt(dsc);
        const Int lo = std::max(-dbound, floor_ld((-qb - root) / (2 * qa)) - 1);
        const Int hi = std::min(dbound, ceil_ld((-qb + root) / (2 * qa)) + 1);
        for (Int d = lo; d <= hi; ++d) {
          Form f{a, b, c, d};
          if (s.wanted(f)) out.push_back(f);
        }
      }
    }
  }
}

bool by_disc(const Form& x, const Form& y) {
  const auto dx = disc(x), dy = disc(y);
  if (dx != dy) return dx < dy;
  return x < y;
}

}  // namespace

std::vector<Form> enumerate_orbits(Int X, bool zmat_only, const EnumerationOptions& opt) {
  if (X < 1) throw DomainError("X must be positive");
  if (X > opt.budget) throw BudgetExceeded("enumeration bound " + std::to_string(X) + " exceeds budget " +
                                           std::to_string(opt.budget));
  const int shards = std::max(1, opt.shards);
  std::vector<std::vector<Form>> parts(shards);
  auto work = [&](int k) {
    if (opt.sign >= 0) scan_positive({X, zmat_only, 1}, k, shards, parts[k]);
    if (opt.sign <= 0) scan_negative({X, zmat_only, -1}, k, shards, parts[k]);
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int k = 0; k < shards; ++k) threads.emplace_back(work, k);
    for (auto& t : threads) t.join();
  }
  std::vector<Form> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(), by_disc);
  return out;
}

std::vector<Form> enumerate_orbits_box(Int X, bool zmat_only, Int bound) {
  std::set<Form> seen;
  for (Int a = -bound; a <= bound; ++a)
    for (Int b = -bound; b <= bound; ++b)
      for (Int c = -bound; c <= bound; ++c)
        for (Int d = -bound; d <= bound; ++d) {
          Form f{a, b, c, d};
          const auto D = disc(f);
          if (D == 0 || D > X || D < -X) continue;
          if (zmat_only && !is_zmat(f)) continue;
          seen.insert(canonicalize(f));
        }
  std::vector<Form> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), by_disc);
  return out;
}

ClassNumberTable class_numbers(Int X, const EnumerationOptions& opt) {
  ClassNumberTable table;
  for (Int delta = -X; delta <= X; ++delta)
    if (is_disc(delta)) table[delta] = {};
  for (const auto& f : enumerate_orbits(X, false, opt))
    table[static_cast<Int>(disc(f))].h += Rational(1, stabilizer_order(f));
  for (const auto& f : enumerate_orbits(27 * X, true, opt)) {
    const Int D = static_cast<Int>(disc(f));
    table[-D / 27].hhat += Rational(1, stabilizer_order(f));
  }
  return table;
}

Rational weighted_count(Int d, bool zmat_only, const EnumerationOptions& opt) {
  Rational total = 0;
  if (!is_disc(d)) return total;
  EnumerationOptions o = opt;
  o.sign = d > 0 ? 1 : -1;
  for (const auto& f : enumerate_orbits(abs_val(d), zmat_only, o))
    if (disc(f) == d) total += Rational(1, stabilizer_order(f));
  return total;
}

std::pair<int, int> subring_table(SplittingType t) {
  switch (t) {
    case SplittingType::s111: return {3, 4};
    case SplittingType::s12: return {1, 2};
    case SplittingType::s3: return {0, 1};
    case SplittingType::s1_21: return {2, 2};
    case SplittingType::s1_3: return {1, 1};
  }
  throw DomainError("bad splitting type");
}

BigInt s_sequence(SplittingType t, Int p, int n) {
  if (n < 0) return 0;
  auto [s1, s2] = subring_table(t);
  // s[-2], s[-1], s[0], s[1], s[2], ...
  std::vector<BigInt> s{0, 0, 1, s1, s2};
  while (static_cast<int>(s.size()) < n + 3) {
    const size_t k = s.size();  // entry k holds s_{k-2}
    s.push_back(s[k - 1] + p * (s[k - 3] - s[k - 4]));
  }
  return s[n + 2];
}

BigInt s_closed_form(SplittingType t, Int p, int n) {
  if (n < 0) return 0;
  auto [s1, s2] = subring_table(t);
  auto pw = [p](int e) -> BigInt { return boost::multiprecision::pow(BigInt(p), e); };
  const BigInt num = pw((n + 3) / 3) - 1 + BigInt(s1 - 1) * (pw((n + 2) / 3) - 1) + BigInt(s2 - s1) * (pw((n + 1) / 3) - 1);
  return num / (p - 1);
}

BigInt subring_count(const Form& f, Int m) {
  if (m < 1) throw DomainError("index must be positive");
  BigInt total = 1;
  if (m == 1) return total;
  for (auto [p, v] : factorize(m)) {
    if (!is_maximal_at_p(f, p)) throw DomainError("form is not maximal at " + std::to_string(p));
    total *= s_sequence(splitting_type(f, p), p, v);
  }
  return total;
}

ClassNumbers lookup(const ClassNumberTable& table, Int delta) {
  if (!is_disc(delta)) return {};
  auto it = table.find(delta);
  if (it == table.end()) throw BudgetExceeded("class number table does not cover " + std::to_string(delta));
  return it->second;
}

namespace {

std::vector<RecursionReport> evaluate_recursion(Int D, Int p, const std::function<ClassNumbers(Int)>& get) {
  if (!is_disc(D)) throw DomainError("D must be a discriminant");
  if (!is_prime(p)) throw DomainError("p must be prime");
  const Int p2 = p * p, p4 = p2 * p2, p6 = p4 * p2;
  const auto top = get(p6 * D), mid = get(p4 * D), base = get(D);
  const ClassNumbers below = (D % p2 == 0) ? get(D / p2) : ClassNumbers{};
  std::vector<RecursionReport> out;
  for (bool hat : {false, true}) {
    auto pick = [hat](const ClassNumbers& c) { return hat ? c.hhat : c.h; };
    RecursionReport r;
    r.D = D;
    r.p = p;
    r.hhat = hat;
    r.lhs = pick(top);
    r.rhs = pick(mid) + Rational(p) * (pick(base) - pick(below));
    r.pass = r.lhs == r.rhs;
    r.detail = std::string(hat ? "hhat" : "h") + "(" + std::to_string(p6 * D) + ") vs " + (hat ? "hhat" : "h") +
               "(" + std::to_string(p4 * D) + ") + " + std::to_string(p) + "*(" + to_string(pick(base)) + " - " +
               to_string(pick(below)) + ")";
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<RecursionReport> check_recursion(Int D, Int p, const ClassNumberTable& table) {
  return evaluate_recursion(D, p, [&](Int d) { return lookup(table, d); });
}

std::vector<RecursionReport> check_recursion(Int D, Int p, const EnumerationOptions& opt) {
  return evaluate_recursion(D, p, [&](Int d) {
    if (!is_disc(d)) return ClassNumbers{};
    return ClassNumbers{weighted_count(d, false, opt), weighted_count(-27 * d, true, opt)};
  });
}

ZetaCoefficients zeta_coefficients(Int X, const EnumerationOptions& opt) {
  const auto table = class_numbers(X, opt);
  ZetaCoefficients z;
  for (auto* v : {&z.zeta_plus, &z.zeta_minus, &z.zhat_plus, &z.zhat_minus}) v->assign(X + 1, Rational(0));
  for (Int n = 1; n <= X; ++n) {
    const auto pos = lookup(table, n), neg = lookup(table, -n);
    z.zeta_plus[n] = pos.h;
    z.zeta_minus[n] = neg.h;
    z.zhat_plus[n] = neg.hhat;
    z.zhat_minus[n] = pos.hhat;
  }
  return z;
}

}  // namespace cubic
