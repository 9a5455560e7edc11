#pragma once

// Orbit enumeration by discriminant, weighted class numbers, and local subring counts.

#include "cubic/forms.hpp"
#include "cubic/rings.hpp"

#include <map>
#include <string>
#include <vector>

namespace cubic {

/// Largest |disc| any enumeration may reach.
inline constexpr Int kDefaultBudget = 1'000'000;

/// Budget from CUBIC_BUDGET if set, else kDefaultBudget.
Int default_budget();

struct EnumerationOptions {
  Int budget = kDefaultBudget;
  int shards = 1;
  int sign = 0;  // restrict to disc > 0 (+1) or disc < 0 (-1); 0 for both
};

/// One canonical form per orbit with 0 < |disc| <= X, sorted by (disc, form).
std::vector<Form> enumerate_orbits(Int X, bool zmat_only, const EnumerationOptions& opt = {});

/// Oracle: every form with coefficients in [-bound, bound], canonicalized and deduplicated.
std::vector<Form> enumerate_orbits_box(Int X, bool zmat_only, Int bound);

struct ClassNumbers {
  Rational h = 0;
  Rational hhat = 0;
};

/// Delta -> (h, hhat); hhat(Delta) counts Z-mat rings of disc -27 Delta.
using ClassNumberTable = std::map<Int, ClassNumbers>;

/// Entries for every Delta in Discs with 0 < |Delta| <= X.
ClassNumberTable class_numbers(Int X, const EnumerationOptions& opt = {});

/// Weighted count of orbits of one discriminant (Z-mat only if asked).
Rational weighted_count(Int disc, bool zmat_only, const EnumerationOptions& opt = {});

/// s_n for a maximal ring with the given splitting type at p (s_n = 0 for n < 0).
BigInt s_sequence(SplittingType t, Int p, int n);
BigInt s_closed_form(SplittingType t, Int p, int n);
std::pair<int, int> subring_table(SplittingType t);

/// Subrings of index m in the ring of a form maximal at every prime dividing m.
BigInt subring_count(const Form& maximal_form, Int m);

struct RecursionReport {
  Int D = 0;
  Int p = 0;
  bool hhat = false;
  Rational lhs, rhs;
  bool pass = false;
  std::string detail;
};

/// h(p^6 D) = h(p^4 D) + p (h(D) - h(D / p^2)) and the same for hhat, values taken from the table.
std::vector<RecursionReport> check_recursion(Int D, Int p, const ClassNumberTable& table);
/// Same, enumerating exactly what is needed.
std::vector<RecursionReport> check_recursion(Int D, Int p, const EnumerationOptions& opt = {});

/// Table lookup with h = hhat = 0 outside Discs.
ClassNumbers lookup(const ClassNumberTable& table, Int delta);

struct ZetaCoefficients {
  // index n = 1..X; entry 0 unused
  std::vector<Rational> zeta_plus, zeta_minus, zhat_plus, zhat_minus;
};

/// zeta+(n) = h(n), zeta-(n) = h(-n), zhat+(n) = hhat(-n), zhat-(n) = hhat(n).
ZetaCoefficients zeta_coefficients(Int X, const EnumerationOptions& opt = {});

}  // namespace cubic
