#pragma once

// Scalar types and small integer helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubic {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Widened scalar used for intermediate products (discriminants, form evaluations).
template <class T>
struct Wide {
  using type = T;
};
template <>
struct Wide<std::int64_t> {
  using type = __int128;
};
template <class T>
using wide_t = typename Wide<T>::type;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
T abs_val(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
int sign_of(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

template <class T>
T gcd_val(T a, T b) {
  a = abs_val(a);
  b = abs_val(b);
  while (b != 0) {
    T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

/// Non-negative residue.
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// floor(sqrt(n)) for n >= 0.
Int isqrt(Int n);
BigInt isqrt(const BigInt& n);
bool is_square(Int n);

/// Checked narrowing used after exact wide arithmetic.
inline Int narrow(__int128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw std::overflow_error("integer overflow narrowing to 64 bits");
  return static_cast<Int>(v);
}

bool is_prime(Int n);
std::vector<Int> primes_up_to(Int n);
/// Prime factorization of |n| (n != 0) as (p, e) pairs in increasing p.
std::vector<std::pair<Int, int>> factorize(Int n);
std::vector<Int> divisors(Int n);
/// Exponent of p in n (n != 0).
int valuation(Int n, Int p);

/// Kronecker symbol (d | p) for a prime p.
int kronecker(Int d, Int p);

bool is_disc(Int d);  // d != 0 and d = 0,1 mod 4
bool is_fundamental(Int d);
/// Writes d = d0 * f^2 with d0 fundamental.
std::pair<Int, Int> fundamental_part(Int d);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace cubic
