#include "cubic/arith.hpp"

#include <algorithm>
#include <cmath>

namespace cubic {

Int isqrt(Int n) {
  if (n < 0) throw DomainError("isqrt of negative");
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw DomainError("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

bool is_square(Int n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<Int> primes_up_to(Int n) {
  std::vector<Int> out;
  if (n < 2) return out;
  std::vector<bool> sieve(static_cast<size_t>(n + 1), true);
  for (Int i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (Int j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n == 0) throw DomainError("factorize(0)");
  n = abs_val(n);
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> divisors(Int n) {
  std::vector<Int> out{1};
  for (auto [p, e] : factorize(n)) {
    size_t sz = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int valuation(Int n, Int p) {
  if (n == 0) throw DomainError("valuation of 0");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int kronecker(Int d, Int p) {
  if (p == 2) {
    if (d % 2 == 0) return 0;
    Int r = mod(d, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  Int a = mod(d, p);
  if (a == 0) return 0;
  // Euler's criterion.
  Int e = (p - 1) / 2, result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = static_cast<Int>(static_cast<__int128>(result) * base % p);
    base = static_cast<Int>(static_cast<__int128>(base) * base % p);
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

bool is_disc(Int d) {
  if (d == 0) return false;
  Int r = mod(d, 4);
  return r == 0 || r == 1;
}

std::pair<Int, Int> fundamental_part(Int d) {
  if (!is_disc(d)) throw DomainError("not a discriminant: " + std::to_string(d));
  Int f = 1;
  for (auto [p, e] : factorize(d)) {
    for (int k = e / 2; k >= 1; --k) {
      Int pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      if (is_disc(d / (pk * pk))) {
        f *= pk;
        break;
      }
    }
  }
  // Prime-by-prime choice is independent: removing p^{2k} only affects the class mod 4 when p = 2.
  return {d / (f * f), f};
}

bool is_fundamental(Int d) { return is_disc(d) && fundamental_part(d).second == 1; }

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace cubic
