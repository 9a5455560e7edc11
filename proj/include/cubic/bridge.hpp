#pragma once

// Links between Z-mat cubic rings, ideals of quadratic orders and characters of Picard groups.

#include "cubic/counting.hpp"
#include "cubic/quad.hpp"
#include "cubic/rings.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cubic {

/// x + y sqrt(D) in Q(sqrt D).
struct KElem {
  Rational x = 0, y = 0;
  friend bool operator==(const KElem&, const KElem&) = default;
};

KElem k_mul(Int D, const KElem& u, const KElem& v);
KElem k_conj(const KElem& u);
Rational k_norm(Int D, const KElem& u);
/// Membership in O_D = Z[(r + sqrt D) / 2].
bool in_order(Int D, const KElem& u);

/// (O_D, I = <1, tau>, gamma) with tau = (s + sqrt D) / (2t) and gamma = (-u + phi sqrt D) / 2.
/// alpha has characteristic polynomial x^3 + 3t x + u, so gamma * conj(gamma) = -t^3.
struct SelfBalancedTriple {
  Int disc = 0;
  Int t = 0, s = 0, u = 0, r = 0;  // r = (s^2 - D) / (2t)
  Int phi = 0;                     // oriented form at alpha
  KElem gamma, tau;
  std::array<Int, 2> alpha{}, beta{};  // coordinates of c(1), c(tau) on C / Z
};

/// Deterministic choice of alpha: increasing max coordinate, primitive, both genericity conditions.
SelfBalancedTriple extract_triple(const CubicRing& C);
/// Triple built from a given alpha; throws DomainError if alpha is not primitive and generic.
SelfBalancedTriple extract_triple(const CubicRing& C, std::array<Int, 2> alpha);

/// gamma tau^k in O_D for k = 0..3.
bool gamma_I3_in_order(const SelfBalancedTriple& T);
/// |N(gamma)| N(I)^3.
Rational balance_norm(const SelfBalancedTriple& T);
/// Form of the ring read back from the triple on the basis [c(1), c(tau)].
Form form_from_triple(const SelfBalancedTriple& T);

/// lambda with I' = lambda I and gamma' = lambda^-3 gamma, for two triples of the same ring.
std::optional<KElem> equivalence_multiplier(const CubicRing& C, const SelfBalancedTriple& A,
                                            const SelfBalancedTriple& B);
/// omega I is contained in I (D = -3 k^2 only).
bool has_omega_multiplier(const SelfBalancedTriple& T);

struct JData {
  Int disc_prime = 0;  // D / g^2
  Int g = 1;
  QuadIdeal J;
};

/// J = gamma I^3 / g in O_{D / g^2}, g the content of the attached form (t, s, r / 2).
JData triple_to_J(const SelfBalancedTriple& T);

struct WeightConstants {
  int w = 1;
  Rational eta = 1;
};
WeightConstants weight_constants(Int D);

/// Invertible ideals of norm g with cube class in O_{D/g^2}, weighted by |Pic(O_{D/g^2})[3]|.
/// With skip_prime set, terms with skip_prime | g are left out.
Rational rhs_count(Int D, Int skip_prime = 0);

/// Splitting type of p in the algebra attached to a primitive character on Pic(O_{D0 d^2}).
SplittingType splitting_type_from_char(const PicGroup& G, const Mu3Char& chi, Int p);

/// The character induced on Pic(O_{D0 c^2}) by a character of Pic(O_D) of conductor dividing c.
Mu3Char induced_char(const PicGroup& from, const PicGroup& to, const Mu3Char& chi);

struct CharTerm {
  Int conductor = 1;
  BigInt subrings = 0;             // subrings of index m / conductor from splitting types
  std::array<Int, 3> ideal_sum{};  // counts of chi(I) = 1, w, w^2 over the ideal side
};

/// One entry per character of Pic(O_D); requires m cubefree unless allow_cubeful.
std::vector<CharTerm> character_terms(Int D, bool with_ideal_side = false, bool allow_cubeful = false);
Rational lhs_count(Int D, bool allow_cubeful = false);

struct CheckReport {
  std::string check;
  Int delta = 0;
  Rational lhs = 0, rhs = 0;
  bool pass = false;
  std::string detail;
};

/// rhs_count(D) against 2 w eta hhat(D).
CheckReport check_rhs(Int D, const ClassNumberTable& table);
/// lhs_count(D) against 2 w h(D).
CheckReport check_lhs(Int D, const ClassNumberTable& table);
/// Cubic fields with discriminant squarely dividing D against (|Pic(O_D)[3]| - 1) / 2.
CheckReport check_fields_pic(Int D, const std::vector<Form>& orbits);
CheckReport check_fields_pic(Int D);
/// 6 w eta h(D) at -3D against the 3 !| g part of rhs_count(-27 D); needs 3 !| D.
CheckReport check_prop_3notdiv(Int D, const ClassNumberTable& table);
/// |Pic(fund(-3 D0))[3]| / |Pic(D0)[3]| lies in {1, 3} (D0 > 1) or {1, 1/3} (D0 < 0).
CheckReport check_scholz(Int D0);

/// Irreducible over Q (the ring is an order in a field).
bool is_field_form(const Form& f);

}  // namespace cubic
