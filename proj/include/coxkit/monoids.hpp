#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "coxkit/exactgeom.hpp"

namespace coxkit {

/// Finitely generated submonoid of Z^n with pointed cone. The group L is the
/// integer span of the generators; group_basis() is its HNF row basis.
class AffineMonoid {
 public:
  AffineMonoid(std::size_t ambient_rank, std::vector<IntVector> generators);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const std::vector<IntVector>& generators() const noexcept { return generators_; }
  const IntMatrix& group_basis() const noexcept { return cone_.lattice(); }
  const Cone& cone() const noexcept { return cone_; }
  std::size_t rank() const noexcept { return cone_.lattice().rows(); }

  /// Coordinates in group_basis(); nullopt when x is not in L.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  /// Exact membership of x in the monoid.
  bool contains(const IntVector& x) const;

 private:
  std::size_t ambient_rank_;
  std::vector<IntVector> generators_;
  Cone cone_;
  std::vector<IntVector> generator_coords_;
  std::vector<IntVector> facets_;
  IntVector grading_;  // strictly positive on the cone minus 0, in coordinates
};

struct SaturationReport {
  bool saturated = true;
  std::optional<IntVector> witness;
};

/// Whether the monoid equals σ ∩ L'. L' defaults to the group of the
/// monoid; an override must contain every generator.
SaturationReport is_saturated(const AffineMonoid& m,
                              const std::optional<IntMatrix>& lattice = std::nullopt);

/// Embedding of a monoid into Z^r_{>=0} by functionals on its group. The
/// functionals are stored in coordinates of monoid.group_basis().
struct DivisorTheory {
  AffineMonoid monoid;
  IntMatrix functionals;

  std::size_t free_rank() const noexcept { return functionals.rows(); }
  IntVector image(const IntVector& x) const;
  std::vector<IntVector> generator_images() const;

  /// Validates nonnegativity on generators and injectivity on L.
  static DivisorTheory from_functionals(AffineMonoid m, IntMatrix functionals);
  /// Functionals given as rows of ambient coordinates, restricted to L.
  static DivisorTheory from_ambient(AffineMonoid m, const IntMatrix& ambient);
};

/// Restriction of an ambient functional to L, in group_basis() coordinates.
IntVector restrict_functional(const AffineMonoid& m, const IntVector& ambient);

/// Primitive edge functionals of the dual cone. Functionals that are
/// restrictions of coordinate projections come first, in coordinate order.
/// Throws NotSaturated.
DivisorTheory divisor_theory(const AffineMonoid& m);

/// Homomorphism from a monoid into Z^k_{>=0}, determined by the images of
/// the generators. It must be induced by a group homomorphism on L.
class MonoidHom {
 public:
  static MonoidHom from_generator_images(const AffineMonoid& m,
                                         std::vector<IntVector> images);
  /// Rows of `matrix` are ambient functionals, one per target coordinate.
  static MonoidHom from_matrix(const AffineMonoid& m, const IntMatrix& matrix);

  std::size_t target_rank() const noexcept { return on_basis_.cols(); }
  const std::vector<IntVector>& generator_images() const noexcept { return images_; }
  IntVector apply(const AffineMonoid& m, const IntVector& x) const;

 private:
  std::vector<IntVector> images_;
  IntMatrix on_basis_;  // rank(L) x k, images of group_basis() rows
};

struct AxiomReport {
  bool passed = true;
  int failed_axiom = 0;  ///< 1 or 2 when !passed
  // Axiom (i): tau(a) = tau(b) + c1 with c1 outside tau(monoid).
  std::optional<IntVector> a, b, c1;
  // Axiom (ii): d1 != d2 with equal divisibility sets.
  std::optional<IntVector> d1, d2;
};

/// Axiom (i) is checked over pairs of monoid elements whose image has total
/// coordinate sum <= depth. Axiom (ii) is decided exactly for every d of sum
/// <= depth.
AxiomReport verify_divisor_axioms(const DivisorTheory& dt, std::size_t depth);

/// Monoid elements whose divisor-theory image has coordinate sum <= depth,
/// in breadth-first order over generator words.
std::vector<IntVector> element_window(const DivisorTheory& dt, std::size_t depth);

struct Beta {
  IntMatrix matrix;  ///< target_rank x free_rank
};
struct ViolationStar {
  IntVector a, b, s;
};
struct ViolationStarStar {
  std::vector<IntVector> witness_set;
  std::size_t common_prime_index;  ///< 1-based coordinate of the target
};
struct NotAnEmbedding {
  IntVector a, b;
};
using ExtensionResult = std::variant<Beta, ViolationStar, ViolationStarStar, NotAnEmbedding>;

/// Extends alpha through the divisor theory. Throws DepthInsufficient when
/// no violation is found within depth but the constructed beta does not
/// factor alpha.
ExtensionResult extend_embedding(const DivisorTheory& dt, const MonoidHom& alpha,
                                 std::size_t depth = 8);

/// Exact test of t ∈ N·images (images nonzero and nonnegative).
bool in_monoid_image(const std::vector<IntVector>& images, const IntVector& t);

}  // namespace coxkit
