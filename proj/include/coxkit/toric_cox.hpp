#pragma once

#include <optional>
#include <vector>

#include "coxkit/exactgeom.hpp"
#include "coxkit/grading.hpp"
#include "coxkit/poly.hpp"

namespace coxkit {

/// Cox ring data of the affine toric variety of a cone sigma.
///
/// Characters are written in the basis dual to cone.lattice(); for a cone in
/// the standard lattice these are ordinary coordinates.
struct CoxData {
  Cone cone;
  std::vector<IntVector> rays;  ///< primitive ray generators, in ambient coordinates
  AbGroup cl_group;
  std::vector<GroupElem> var_degrees;  ///< class of the divisor of each ray
  IntMatrix ray_pairing;               ///< (k, i) = <e_k^*, v_i>
  std::vector<IntVector> characters;   ///< Hilbert basis of the dual cone: the coordinates x_j
};

/// Class group from the Smith form of u -> (<u, v_i>)_i. The free part of the
/// degree map is put in Hermite form, so its first nonzero entry per row is
/// positive. Variables follow the rays in descending lexicographic order
/// unless `ray_order`, a permutation of the rays, is given.
CoxData cox_data(const Cone& c, const std::optional<std::vector<IntVector>>& ray_order = std::nullopt);

/// Quadric cone over the unit square, with rays ordered so that the degrees
/// are (1, 1, -1, -1) and the characters pull back to y1y3, y1y4, y2y3, y2y4.
CoxData quadric_cox_data();

GradedRing cox_ring(const CoxData& cd);

/// The monomial prod y_i^<u, v_i>. Throws NotInDualCone.
Poly pullback(const CoxData& cd, const IntVector& u);

/// x_j -> pullback(characters[j]).
PolyMap quotient_map(const CoxData& cd);

/// Writes a polynomial whose terms all have degree 0 as a polynomial in the
/// coordinates x_j. Throws InvalidArgument on a term of nonzero degree.
Poly descend(const CoxData& cd, const Poly& p);

/// Restriction of a grading-normalizing phi to degree 0, written on the
/// coordinates: x_j -> descend(phi(q*(x_j))). Under the Pullback convention
/// this is the psi that phi lifts. Throws NotGradingPreserving.
PolyMap induced_map(const CoxData& cd, const GradedEndo& phi);

/// How psi and phi are read.
///   LeftAction: automorphisms act on functions by f -> f ∘ g^{-1}; phi lifts
///     psi iff psi* ∘ (phi restricted to degree 0) is the identity of K[X].
///   Pullback: psi* and phi are the comorphisms; phi lifts psi iff
///     q* ∘ psi* == phi ∘ q*.
/// Both read phi as the substitution y_i -> phi_i and psi as x_j -> psi_j.
enum class LiftConvention { LeftAction, Pullback };

/// Checks the lift condition on every coordinate x_j, and that phi normalizes
/// the grading. `psi` maps x-variables to polynomials in them.
bool verify_lift(const CoxData& cd, const PolyMap& psi, const GradedEndo& phi,
                 LiftConvention conv = LiftConvention::LeftAction);

/// Index of the first relation r (a polynomial in x) with r(psi) not vanishing
/// on X, tested exactly through the injective q*.
std::optional<std::size_t> first_violated_relation(const CoxData& cd, const PolyMap& psi,
                                                   const std::vector<Poly>& relations);

}  // namespace coxkit
