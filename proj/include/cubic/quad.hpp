#pragma once

// Quadratic orders O_D = Z[xi], xi^2 = r xi - n with r = D mod 2 and n = (r^2 - D) / 4.
// Covers imaginary, real, and split (square D) orders, maximal or not.

#include "cubic/arith.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cubic {

struct QuadOrder {
  Int disc = 0;
  Int fund = 0;       // fundamental part D0
  Int conductor = 1;  // f with D = D0 f^2
  Int r = 0;          // trace of xi
  Int n = 0;          // norm of xi

  Int norm(Int x, Int y) const;  // N(x + y xi)
};

QuadOrder quad_order(Int D);

/// x + y xi with integer coordinates.
template <class I>
struct QuadElem {
  I x = 0, y = 0;
  friend bool operator==(const QuadElem&, const QuadElem&) = default;
};

QuadElem<Int> multiply(const QuadOrder& O, const QuadElem<Int>& u, const QuadElem<Int>& v);
QuadElem<Int> conjugate(const QuadOrder& O, const QuadElem<Int>& u);

/// The ideal g <a, b + xi> with a | b^2 + r b + n and 0 <= b < a.
struct QuadIdeal {
  Int disc = 0;
  Int g = 1, a = 1, b = 0;

  Int norm() const { return g * g * a; }
  bool contains(const QuadOrder& O, const QuadElem<Int>& u) const;
  std::array<QuadElem<Int>, 2> basis() const { return {{{g * a, 0}, {g * b, g}}}; }
  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
};

std::string format_ideal(const QuadIdeal& I);  // "g,a,b@D"
QuadIdeal parse_ideal(const std::string& text);

QuadIdeal unit_ideal(Int D);
/// The ideal generated (as a Z-lattice) by the given elements; they must span an ideal of full rank.
QuadIdeal ideal_from_lattice(const QuadOrder& O, const std::vector<QuadElem<Int>>& gens);
QuadIdeal ideal_product(const QuadOrder& O, const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_conjugate(const QuadOrder& O, const QuadIdeal& I);
/// Primitive part: g set to 1.
QuadIdeal primitive_part(const QuadIdeal& I);

/// gcd of the attached form (a, 2b + r, (b^2 + r b + n) / a) is 1.
bool is_invertible(const QuadOrder& O, const QuadIdeal& I);
/// I * conj(I) == N(I) O, the definition-level test.
bool is_invertible_by_product(const QuadOrder& O, const QuadIdeal& I);

std::vector<QuadIdeal> ideals_of_norm(Int D, Int n, bool invertible_only, Int budget = 1'000'000);

/// Generator of the unit group modulo torsion; first coordinate x, second y (x + y xi), > 1.
QuadElem<BigInt> fundamental_unit(Int D);

/// Generator of I when I is principal.
std::optional<QuadElem<BigInt>> principal_generator(const QuadOrder& O, const QuadIdeal& I);
bool is_principal(const QuadOrder& O, const QuadIdeal& I);
/// I ~ J in Pic.
bool same_class(const QuadOrder& O, const QuadIdeal& I, const QuadIdeal& J);

struct PicGroup {
  QuadOrder order;
  std::vector<QuadIdeal> reps;  // reps[0] is O itself
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;

  int size() const { return static_cast<int>(reps.size()); }
  int op(int x, int y) const { return table[x][y]; }
  int power(int x, Int k) const;
  int class_of(const QuadIdeal& I) const;
};

PicGroup picard_group(Int D, Int generation_bound = 0, Int budget = 1'000'000);
Int default_generation_bound(Int D);

int pic_3_torsion(const PicGroup& G);
int pic_3_torsion(Int D);
bool is_cube_class(const PicGroup& G, int cls);

/// A homomorphism Pic -> Z/3, values indexed by class.
struct Mu3Char {
  std::vector<int> values;
  bool trivial() const;
};

std::vector<Mu3Char> mu3_characters(const PicGroup& G);

/// Image class in Pic(O_{D0 to_f^2}) of each class of Pic(O_{D0 from_f^2}), via I -> I O'.
std::vector<int> order_change_map(const PicGroup& from, const PicGroup& to);
/// Extension of an invertible ideal of O_D to the overorder O_{D'} (D = D' s^2).
QuadIdeal extend_ideal(const QuadOrder& from, const QuadOrder& to, const QuadIdeal& I);

/// Smallest c | f such that chi factors through Pic(O_{D0 c^2}).
Int conductor_of_char(const PicGroup& G, const Mu3Char& chi);

/// |O^x / (O^x)^3|.
int unit_cube_classes(Int D);

}  // namespace cubic
