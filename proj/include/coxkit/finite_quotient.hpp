#pragma once

#include <map>
#include <vector>

#include "coxkit/cyclotomic.hpp"
#include "coxkit/poly.hpp"

namespace coxkit {

inline constexpr std::size_t kDefaultClosureCap = 10000;

/// Finite matrix group over Q(z_n). Elements are listed in breadth-first
/// order from the identity, multiplying on the right by generators.
class MatGroup {
 public:
  std::size_t dim() const noexcept { return dim_; }
  unsigned conductor() const noexcept { return conductor_; }
  const std::vector<CycloMatrix>& generators() const noexcept { return generators_; }
  const std::vector<CycloMatrix>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }

  /// Index of a matrix in elements(), or npos.
  std::size_t index_of(const CycloMatrix& m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  /// Indices of the generators in elements().
  std::vector<std::size_t> generator_indices() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend MatGroup close_group(std::size_t, unsigned, const std::vector<CycloMatrix>&, std::size_t);

 private:
  std::size_t dim_ = 0;
  unsigned conductor_ = 1;
  std::vector<CycloMatrix> generators_;
  std::vector<CycloMatrix> elements_;
  std::map<std::vector<Rat>, std::size_t> index_;
};

/// Throws NotInvertible, DimensionMismatch or ClosureCapExceeded.
MatGroup close_group(std::size_t dim, unsigned conductor, const std::vector<CycloMatrix>& generators,
                     std::size_t cap = kDefaultClosureCap);

/// Indices of the elements A with rank(A - I) == 1.
std::vector<std::size_t> pseudoreflections(const MatGroup& g);

struct QuotientReport {
  std::size_t order_g = 0, order_h = 0, order_htilde = 0;
  bool f_abelian = false;
  std::size_t commutant_order = 0;  ///< |[F,F]| = |H~| / |H|
  std::vector<Int> n_invariants;    ///< invariant factors of N = G / H~
  bool is_toric = false;
};

/// H = subgroup generated by pseudoreflections (normal, since conjugation
/// preserves them), F = G/H, H~ = preimage of [F,F] = H[G,G], N = G/H~.
QuotientReport quotient_report(const MatGroup& g);

/// Polynomial in dim variables with coefficients in Q(z_n).
using CycloPoly = std::map<Monomial, CycloNum, GrlexLess>;

std::string to_string(const CycloPoly& p, const std::vector<std::string>& var_names);

/// Basis of the degree-d invariants of the action f(x) -> f(A x), obtained by
/// averaging monomials and reducing the span to echelon form (leading
/// coefficient 1, leading monomials distinct and descending).
std::vector<CycloPoly> reynolds_invariants(const MatGroup& g, unsigned degree);

/// All monomials of the given degree in n variables, descending grlex.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned degree);

}  // namespace coxkit
