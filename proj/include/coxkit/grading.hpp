#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coxkit/exactgeom.hpp"
#include "coxkit/poly.hpp"

namespace coxkit {

/// Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t with d_i >= 2 and d_i | d_{i+1}.
struct AbGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  std::size_t width() const noexcept { return free_rank + torsion.size(); }
  void validate() const;
  friend bool operator==(const AbGroup&, const AbGroup&) = default;
};

/// Element of an AbGroup: free coordinates followed by residues in [0, d_i).
struct GroupElem {
  IntVector free_part;
  IntVector torsion_part;

  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

GroupElem make_elem(const AbGroup& g, const IntVector& free_part, const IntVector& torsion_part = {});
GroupElem zero_elem(const AbGroup& g);
GroupElem add(const AbGroup& g, const GroupElem& a, const GroupElem& b);
GroupElem scale(const AbGroup& g, const Int& k, const GroupElem& a);
std::string to_string(const GroupElem& e);

struct GradedRing {
  std::size_t num_vars = 0;
  AbGroup group;
  std::vector<GroupElem> var_degrees;

  void validate() const;
  GroupElem monomial_degree(const Monomial& m) const;
};

/// Z-graded ring with the given integer degrees.
GradedRing integer_grading(const std::vector<long>& degrees);
/// Quadric Cox ring: deg y1 = deg y2 = 1, deg y3 = deg y4 = -1.
GradedRing quadric_ring();

struct DegreeResult {
  enum class Kind { Homogeneous, NotHomogeneous, Zero } kind;
  std::optional<GroupElem> degree;
  std::optional<Monomial> witness_a, witness_b;  ///< terms of different degree
};

DegreeResult degree_of(const Poly& p, const GradedRing& r);

/// How a map acts on the grading. phi0 is determined on the subgroup
/// generated by the variable degrees; `phi0_matrix` (columns = images of the
/// standard generators of the group) is given when that subgroup is the
/// whole group.
struct NormalizeReport {
  enum class Kind { Preserves, Normalizes, Neither } kind;
  std::optional<IntMatrix> phi0_matrix;
  std::string witness;  ///< reason when kind == Neither
};

/// Recorded shape of a graded endomorphism.
enum class EndoKind {
  Linear,            ///< y_i -> sum_j a_ij y_j
  Shear,             ///< y_i -> y_i + f, f free of y_i
  CoordinateUpdate,  ///< y_i -> y_i + f, f may involve y_i; not necessarily invertible
  General,
};

struct GradedEndo {
  GradedRing ring;
  PolyMap map;
  EndoKind kind = EndoKind::General;
  std::size_t index = 0;  ///< changed variable (0-based) for Shear/CoordinateUpdate
  Poly increment;         ///< f for Shear/CoordinateUpdate

  /// Validates that all images are homogeneous (ImagesNotHomogeneous).
  static GradedEndo general(GradedRing ring, PolyMap map);
};

NormalizeReport check_normalizes(const GradedEndo& e);

/// Invertible degree-compatible linear map; rows of `matrix` give images.
GradedEndo elementary_linear(const GradedRing& r, const std::vector<std::vector<Rat>>& matrix);
/// y_i -> y_i + f with f free of y_i and homogeneous of degree deg(y_i).
GradedEndo elementary_shear(const GradedRing& r, std::size_t i, const Poly& f);
/// y_i -> y_i + f with f homogeneous of degree deg(y_i); f may involve y_i.
GradedEndo coordinate_update(const GradedRing& r, std::size_t i, const Poly& f);

/// Recognizes linear maps and strict shears.
std::optional<GradedEndo> as_elementary(const GradedRing& r, const PolyMap& m);

GradedEndo compose(const GradedEndo& a, const GradedEndo& b);
bool verify_inverse(const GradedEndo& e, const GradedEndo& e_inv);

/// The map y_i -> y_i + f_1 with f_1 the degree-one part of the increment,
/// or the map itself for Linear.
PolyMap linear_part(const GradedEndo& e);

/// Composite of seq, first element applied first (phi_n ∘ ... ∘ phi_1),
/// after replacing every nonlinear step that changes a frozen variable
/// (0-based) by its linear part. Throws NotElementary.
PolyMap rho_replace(const std::vector<GradedEndo>& seq, const std::vector<std::size_t>& frozen);

/// Composite of seq in the same order as rho_replace.
PolyMap compose_sequence(const std::vector<GradedEndo>& seq, std::size_t num_vars);

PolyMap anick_zeta();

struct NotZeta {
  std::size_t var;  ///< 0-based
  Poly composed_image, zeta_image;
};

struct Certificate {
  PolyMap rho;
  Poly f, g, det_j, residual;
  bool f_in_i3, g_in_i3, fixes_y3_y4, residual_in_i2, det_nonconstant;
};

using WildnessResult = std::variant<NotZeta, Certificate>;

/// Checks the machinery for a given rho on the quadric ring: f, g, det J and
/// its residual against 1 - y1 y3, with I = (y1, y2).
Certificate certify_rho(const PolyMap& rho);

/// Wildness certificate for a purported decomposition of zeta into
/// grading-preserving elementary steps.
WildnessResult wildness_certificate(const std::vector<GradedEndo>& seq);

/// y_i -> y_i + f h^k.
GradedEndo shear_family(const GradedRing& r, std::size_t i, const Poly& f, const Poly& h, unsigned k);

/// Nagata's automorphism of K[y1, y2, y3].
PolyMap nagata_map();

/// All Z-gradings (a, b, c) with entries in [-bound, bound] for which every
/// image of the Nagata map is homogeneous.
std::vector<std::array<long, 3>> nagata_homogeneous_gradings(long bound);

struct TameSearchResult {
  bool found = false;
  std::size_t explored = 0;
  std::vector<GradedEndo> sequence;
};

/// Breadth-first search for zeta among compositions of at most `max_length`
/// grading-preserving shears of the four quadric shapes with monomial H of
/// degree <= max_degree and coefficient +-1.
TameSearchResult bounded_tame_search(std::size_t max_length, unsigned max_degree);

}  // namespace coxkit
