#pragma once

// Integral binary cubic forms a x^3 + b x^2 y + c x y^2 + d y^3 under the twisted
// GL2(Z)-action, together with reduction, canonical orbit representatives and
// stabilizers. Everything is templated on the coefficient scalar so that the same
// code runs on 64-bit integers (enumeration) and on BigInt (random property tests).

#include "cubic/arith.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace cubic {

template <class I>
struct BinaryCubicForm {
  I a{0}, b{0}, c{0}, d{0};

  BinaryCubicForm() = default;
  BinaryCubicForm(I a_, I b_, I c_, I d_) : a(a_), b(b_), c(c_), d(d_) {}

  BinaryCubicForm operator-() const { return {I(-a), I(-b), I(-c), I(-d)}; }
  BinaryCubicForm operator*(const I& k) const { return {I(a * k), I(b * k), I(c * k), I(d * k)}; }

  friend bool operator==(const BinaryCubicForm& x, const BinaryCubicForm& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const BinaryCubicForm& x, const BinaryCubicForm& y) { return !(x == y); }
  friend bool operator<(const BinaryCubicForm& x, const BinaryCubicForm& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  }
};

using Form = BinaryCubicForm<Int>;
using BigForm = BinaryCubicForm<BigInt>;

/// [[p, q], [r, s]] acting by phi(x, y) -> phi(px + ry, qx + sy) / (ps - qr).
template <class I>
struct UnimodularMatrix {
  I p{1}, q{0}, r{0}, s{1};

  UnimodularMatrix() = default;
  UnimodularMatrix(I p_, I q_, I r_, I s_) : p(p_), q(q_), r(r_), s(s_) {}

  I det() const { return p * s - q * r; }

  friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return {I(x.p * y.p + x.q * y.r), I(x.p * y.q + x.q * y.s), I(x.r * y.p + x.s * y.r),
            I(x.r * y.q + x.s * y.s)};
  }
  UnimodularMatrix inverse() const {
    I e = det();  // e = e^{-1} for e = +-1
    return {I(s * e), I(-q * e), I(-r * e), I(p * e)};
  }
  friend bool operator==(const UnimodularMatrix& x, const UnimodularMatrix& y) {
    return x.p == y.p && x.q == y.q && x.r == y.r && x.s == y.s;
  }
};

using Matrix2 = UnimodularMatrix<Int>;

/// Hessian covariant t x^2 + s x y + r y^2 with its content.
template <class I>
struct Hessian {
  I t{0}, s{0}, r{0};
  I content{0};
};

// --------------------------------------------------------------------------
// Basic invariants

template <class I>
wide_t<I> disc(const BinaryCubicForm<I>& f) {
  using W = wide_t<I>;
  W a = f.a, b = f.b, c = f.c, d = f.d;
  return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

/// phi(x, y) evaluated exactly in the widened scalar.
template <class I, class J>
wide_t<I> evaluate(const BinaryCubicForm<I>& f, const J& x, const J& y) {
  using W = wide_t<I>;
  W X = x, Y = y;
  return ((W(f.a) * X + W(f.b) * Y) * X + W(f.c) * Y * Y) * X + W(f.d) * Y * Y * Y;
}

template <class I>
BinaryCubicForm<I> act(const UnimodularMatrix<I>& g, const BinaryCubicForm<I>& f) {
  const I e = g.det();
  if (e != 1 && e != -1) throw DomainError("act: matrix is not unimodular");
  const I &p = g.p, &q = g.q, &r = g.r, &s = g.s;
  const I &a = f.a, &b = f.b, &c = f.c, &d = f.d;
  I A = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
  I B = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (q * q * r + 2 * p * q * s) +
        3 * d * q * q * s;
  I C = 3 * a * p * r * r + b * (2 * p * r * s + q * r * r) + c * (p * s * s + 2 * q * r * s) +
        3 * d * q * s * s;
  I D = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
  return {I(A * e), I(B * e), I(C * e), I(D * e)};
}

template <class I>
bool is_zmat(const BinaryCubicForm<I>& f) {
  return f.b % 3 == 0 && f.c % 3 == 0;
}

template <class I>
Hessian<I> hessian(const BinaryCubicForm<I>& f) {
  Hessian<I> h;
  h.t = f.b * f.b - 3 * f.a * f.c;
  h.s = f.b * f.c - 9 * f.a * f.d;
  h.r = f.c * f.c - 3 * f.b * f.d;
  h.content = gcd_val(gcd_val(h.t, h.s), h.r);
  return h;
}

template <class I>
std::string format_form(const BinaryCubicForm<I>& f) {
  std::ostringstream os;
  os << f.a << "," << f.b << "," << f.c << "," << f.d;
  return os.str();
}

template <class I>
std::ostream& operator<<(std::ostream& os, const BinaryCubicForm<I>& f) {
  return os << "(" << format_form(f) << ")";
}

/// Parses "a,b,c,d" (decimal, optional surrounding whitespace).
Form parse_form(const std::string& text);

// --------------------------------------------------------------------------
// Reduction
//
// Every nondegenerate form carries a positive definite real quadratic covariant
// x^2 + v x y + w y^2 (monic normalization):
//   disc > 0: the Hessian divided by its x^2 coefficient;
//   disc < 0: the quadratic factor belonging to the pair of complex roots.
// A form is reduced when 0 <= v <= 1 <= w. All reducedness tests are exact; only
// the steering of the reduction walk uses floating point.

enum class Reduced { no, interior, boundary };

namespace detail {

template <class I>
long double to_ld(const I& x) {
  return static_cast<long double>(x);
}

template <class I>
int sgn_eval(const BinaryCubicForm<I>& f, const I& x, const I& y) {
  return sign_of(evaluate(f, x, y));
}

/// Sign-normalized copy: a > 0, or a == 0 and b > 0.
template <class I>
BinaryCubicForm<I> positive(const BinaryCubicForm<I>& f) {
  if (f.a < 0 || (f.a == 0 && f.b < 0)) return -f;
  return f;
}

template <class I>
Reduced status_positive_disc(const BinaryCubicForm<I>& f) {
  auto h = hessian(f);
  if (!(0 <= h.s && h.s <= h.t && h.t <= h.r)) return Reduced::no;
  if (h.s == 0 || h.s == h.t || h.t == h.r) return Reduced::boundary;
  return Reduced::interior;
}

template <class I>
Reduced status_negative_disc(const BinaryCubicForm<I>& f0) {
  const auto f = positive(f0);
  const I &a = f.a, &b = f.b, &c = f.c, &d = f.d;
  if (a == 0) {
    // phi = y (b x^2 + c x y + d y^2), b > 0.
    if (!(0 <= c && c <= b && b <= d)) return Reduced::no;
    return (c == 0 || c == b || b == d) ? Reduced::boundary : Reduced::interior;
  }
  // The real root theta of phi(t, 1) satisfies theta <= n/m  <=>  phi(n, m) >= 0 (a, m > 0).
  // v = b/a + theta, and w >= 1 <=> |theta| <= |d|/a (or c >= a when theta = 0).
  const int v_lo = sgn_eval(f, I(-b), a);     // v >= 0  <=>  <= 0
  const int v_hi = sgn_eval(f, I(a - b), a);  // v <= 1  <=>  >= 0
  if (v_lo > 0 || v_hi < 0) return Reduced::no;
  bool edge = (v_lo == 0 || v_hi == 0);
  if (d == 0) {
    if (c < a) return Reduced::no;
    edge = edge || c == a;
  } else {
    const I ad = abs_val(d);
    const int w_hi = sgn_eval(f, ad, a);
    const int w_lo = sgn_eval(f, I(-ad), a);
    if (w_hi < 0 || w_lo > 0) return Reduced::no;
    edge = edge || w_hi == 0 || w_lo == 0;
  }
  return edge ? Reduced::boundary : Reduced::interior;
}

/// Floating point (v, w) of the monic covariant, used only for steering.
template <class I>
std::pair<long double, long double> approx_covariant(const BinaryCubicForm<I>& f0) {
  if (disc(f0) > 0) {
    auto h = hessian(f0);
    long double P = to_ld(h.t);
    return {to_ld(h.s) / P, to_ld(h.r) / P};
  }
  const auto f = positive(f0);
  const long double a = to_ld(f.a), b = to_ld(f.b), c = to_ld(f.c), d = to_ld(f.d);
  if (f.a == 0) return {c / b, d / b};
  auto poly = [&](long double t) { return ((a * t + b) * t + c) * t + d; };
  long double bound = 1 + std::max({std::fabs(b), std::fabs(c), std::fabs(d)}) / a;
  long double lo = -bound, hi = bound;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    long double mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;
    if (poly(mid) >= 0)
      hi = mid;
    else
      lo = mid;
  }
  long double theta = (lo + hi) / 2;
  long double v = b / a + theta;
  long double w = c / a + theta * v;
  return {v, w};
}

template <class I>
const std::vector<UnimodularMatrix<I>>& small_matrices() {
  static const std::vector<UnimodularMatrix<I>> list = [] {
    std::vector<UnimodularMatrix<I>> out;
    for (int p = -1; p <= 1; ++p)
      for (int q = -1; q <= 1; ++q)
        for (int r = -1; r <= 1; ++r)
          for (int s = -1; s <= 1; ++s) {
            int det = p * s - q * r;
            if (det == 1 || det == -1) out.push_back({I(p), I(q), I(r), I(s)});
          }
    return out;
  }();
  return list;
}

}  // namespace detail

template <class I>
Reduced reduction_status(const BinaryCubicForm<I>& f) {
  auto D = disc(f);
  if (D == 0) throw DomainError("degenerate form " + format_form(f));
  return D > 0 ? detail::status_positive_disc(f) : detail::status_negative_disc(f);
}

template <class I>
struct Reduction {
  BinaryCubicForm<I> form;          // reduced
  UnimodularMatrix<I> transform;    // form == act(transform, input)
};

template <class I>
Reduction<I> reduce(const BinaryCubicForm<I>& input) {
  if (disc(input) == 0) throw DomainError("degenerate form " + format_form(input));
  Reduction<I> out{input, {}};
  auto apply = [&](const UnimodularMatrix<I>& g) {
    out.form = act(g, out.form);
    out.transform = g * out.transform;
  };
  for (int iter = 0; iter < 100000; ++iter) {
    if (reduction_status(out.form) != Reduced::no) return out;
    auto [v, w] = detail::approx_covariant(out.form);
    // The tolerance stops oscillation between v = 1 and v = -1; exact ties are settled below.
    if (v > 1 + 1e-9L || v < -1 - 1e-9L) {
      long double k = -std::round(v / 2);
      apply({I(1), I(0), I(static_cast<long long>(k)), I(1)});
    } else if (w < 1) {
      apply({I(0), I(1), I(1), I(0)});
    } else if (v < 0) {
      apply({I(1), I(0), I(0), I(-1)});
    } else {
      break;  // numerically reduced but not exactly: resolve on the boundary below
    }
  }
  for (const auto& s : detail::small_matrices<I>()) {
    auto cand = act(s, out.form);
    if (reduction_status(cand) != Reduced::no) {
      out.form = cand;
      out.transform = s * out.transform;
      return out;
    }
  }
  throw std::logic_error("reduction failed for " + format_form(input));
}

/// All orbit members whose covariant lies in the closed reduced domain, given one of them.
template <class I>
std::vector<BinaryCubicForm<I>> reduced_neighbours(const BinaryCubicForm<I>& reduced) {
  std::vector<BinaryCubicForm<I>> out;
  for (const auto& s : detail::small_matrices<I>()) {
    auto cand = act(s, reduced);
    if (reduction_status(cand) == Reduced::no) continue;
    bool seen = false;
    for (const auto& o : out) seen = seen || o == cand;
    if (!seen) out.push_back(cand);
  }
  return out;
}

/// Canonical orbit representative: the lexicographically greatest reduced member.
template <class I>
BinaryCubicForm<I> canonicalize(const BinaryCubicForm<I>& f) {
  auto red = reduce(f).form;
  auto members = reduced_neighbours(red);
  BinaryCubicForm<I> best = members.front();
  for (const auto& m : members)
    if (best < m) best = m;
  return best;
}

/// Matrices g with act(g, f) == f.
template <class I>
std::vector<UnimodularMatrix<I>> stabilizer(const BinaryCubicForm<I>& f) {
  auto red = reduce(f);
  std::vector<UnimodularMatrix<I>> out;
  const auto inv = red.transform.inverse();
  for (const auto& s : detail::small_matrices<I>())
    if (act(s, red.form) == red.form) out.push_back(inv * s * red.transform);
  return out;
}

template <class I>
int stabilizer_order(const BinaryCubicForm<I>& f) {
  auto red = reduce(f).form;
  int n = 0;
  for (const auto& s : detail::small_matrices<I>())
    if (act(s, red) == red) ++n;
  return n;
}

}  // namespace cubic
