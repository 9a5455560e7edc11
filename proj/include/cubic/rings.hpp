#pragma once

// Cubic rings as multiplication tables on the basis [1, alpha, beta].

#include "cubic/forms.hpp"

#include <array>
#include <string>
#include <vector>

namespace cubic {

struct RingElement {
  Int x0 = 0, x1 = 0, x2 = 0;

  friend bool operator==(const RingElement&, const RingElement&) = default;
  RingElement operator+(const RingElement& o) const { return {x0 + o.x0, x1 + o.x1, x2 + o.x2}; }
  RingElement operator-(const RingElement& o) const { return {x0 - o.x0, x1 - o.x1, x2 - o.x2}; }
  RingElement operator*(Int k) const { return {x0 * k, x1 * k, x2 * k}; }
};

enum class SplittingType { s111, s12, s3, s1_21, s1_3 };

std::string to_string(SplittingType t);
SplittingType parse_splitting_type(const std::string& s);

struct CubicRing {
  Form form;
  int orientation = 1;

  /// alpha^2 = -ac - b alpha + a beta, alpha beta = -ad, beta^2 = -bd - d alpha + c beta.
  RingElement multiply(const RingElement& x, const RingElement& y) const;
  Int trace(const RingElement& x) const;
  /// Form attached to the chosen orientation.
  Form oriented_form() const { return form * static_cast<Int>(orientation); }
  /// Determinant of the trace pairing on the basis.
  BigInt discriminant() const;
};

CubicRing ring_from_form(const Form& form, int orientation = 1);

/// 3 | tr(x) for every x.
bool is_zmat_ring(const CubicRing& C);

/// Sublattice Z + {x : (x1, x2) in M} where M has basis (d1, e), (0, d2) and 0 <= e < d2.
struct Sublattice {
  Int d1 = 1, e = 0, d2 = 1;

  Int index() const { return d1 * d2; }
  bool contains(const RingElement& x) const;
  friend bool operator==(const Sublattice&, const Sublattice&) = default;
};

/// Hermite normal form of the lattice in Z^2 spanned by the given vectors (full rank required).
Sublattice sublattice_spanned(const std::vector<std::array<Int, 2>>& gens);

bool is_subring(const CubicRing& C, const Sublattice& L);

/// Cubic ring structure of a subring, read off from a shifted basis [1, u, v] with uv in Z.
CubicRing subring_ring(const CubicRing& C, const Sublattice& L);

/// The set of x with x^3 in Z + 3C.
Sublattice max_zmat_subring(const CubicRing& C);

bool is_maximal_at_p(const Form& f, Int p);

/// Superrings of index p, found by testing every C + Z x/p. Used as an oracle for is_maximal_at_p.
std::vector<RingElement> superring_generators(const CubicRing& C, Int p);

/// Whether some C' = C + (Z x + Z y)/p with C'/C of order p^2 is a ring.
bool has_superring_p2(const CubicRing& C, Int p);

SplittingType splitting_type(const Form& f, Int p);

/// Number of roots of f in P^1(F_p), counted without multiplicity. Returns -1 if f vanishes mod p.
int count_roots_mod_p(const Form& f, Int p);

std::vector<Sublattice> subrings_of_index(const CubicRing& C, Int n, Int budget = 1'000'000);

}  // namespace cubic
