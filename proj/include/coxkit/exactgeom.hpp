#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coxkit {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

IntVector make_vector(std::initializer_list<long> values);

/// Dense integer matrix, row-major. Dimensions are explicit so that 0 x n and
/// n x 0 matrices keep their shape.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Builds a matrix from row vectors; `cols` is only consulted when `rows` is
  /// empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols = 0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;
  void set_row(std::size_t r, const IntVector& v);

  IntMatrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
/// Matrix times column vector.
IntVector operator*(const IntMatrix& a, const IntVector& v);
/// Row vector times matrix.
IntVector row_times(const IntVector& v, const IntMatrix& a);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
Int dot(const IntVector& a, const IntVector& b);
Rat dot(const RatVector& a, const IntVector& b);
bool is_zero(const IntVector& v);
bool is_nonnegative(const IntVector& v);
Int content(const IntVector& v);
/// Divides by the content; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
/// Clears denominators and divides by the content.
IntVector primitive(const RatVector& v);
std::string to_string(const IntVector& v);
std::string to_string(const IntMatrix& m);

Int determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols);

struct HnfResult {
  IntMatrix h;  ///< row Hermite normal form
  IntMatrix u;  ///< unimodular, u * a == h
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows last.
HnfResult hnf(const IntMatrix& a);

struct SnfResult {
  IntMatrix s;  ///< diagonal, s_1 | s_2 | ..., nonnegative
  IntMatrix u;  ///< unimodular row transform
  IntMatrix v;  ///< unimodular column transform, u * a * v == s
};

SnfResult snf(const IntMatrix& a);

/// Nonzero rows of the HNF of `a`: a basis of the row lattice.
IntMatrix row_lattice_basis(const IntMatrix& a);
/// Saturated basis (rows) of {x in Z^rows : x * a == 0}.
IntMatrix left_kernel(const IntMatrix& a);
/// Integer coordinates c with c * basis == v, if v lies in the row lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis,
                                             const IntVector& v);
/// Rational coordinates c with c * basis == v, if v lies in the row span.
/// `basis` must have independent rows.
std::optional<RatVector> span_coordinates(const IntMatrix& basis,
                                          const IntVector& v);
/// Exact inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& u);

/// Rational polyhedral cone generated by finitely many rays inside a lattice
/// L (given by a row basis in ambient coordinates).
///
/// Rays are the extreme rays of the cone, each the primitive lattice vector
/// of L on its edge, sorted lexicographically. The cone is always pointed.
class Cone {
 public:
  /// Cone generated by arbitrary nonzero vectors of L. Redundant generators
  /// are dropped. Throws NonPointed if the generated cone contains a line.
  /// When `lattice` is omitted, L = Z^ambient_rank.
  static Cone generated_by(std::size_t ambient_rank,
                           const std::vector<IntVector>& generators,
                           std::optional<IntMatrix> lattice = std::nullopt);

  /// Nonnegative orthant of Z^n.
  static Cone orthant(std::size_t n);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  /// Row basis of L in HNF.
  const IntMatrix& lattice() const noexcept { return lattice_; }
  /// Dimension of the cone (rank of its rays).
  std::size_t dimension() const noexcept { return dimension_; }
  bool is_full_dimensional() const noexcept {
    return dimension_ == lattice_.rows();
  }

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::size_t ambient_rank_ = 0;
  std::vector<IntVector> rays_;
  IntMatrix lattice_;
  std::size_t dimension_ = 0;
};

/// Dual cone on the lattice of `c`. Rays are expressed as functionals in the
/// dual basis of c.lattice(); the result has the standard lattice of rank
/// c.lattice().rows(). Requires c full-dimensional in its lattice.
Cone dual_cone(const Cone& c);

/// Facet normals of c as functionals in lattice coordinates: the rays of
/// dual_cone(c).
std::vector<IntVector> facet_functionals(const Cone& c);

/// Minimal generating set of the monoid c ∩ L, sorted lexicographically.
std::vector<IntVector> hilbert_basis(const Cone& c);

/// True iff v lies in the rational cone (v need not lie in L).
bool cone_contains(const Cone& c, const IntVector& v);

/// Coordinates of v in c.lattice(); throws InvalidArgument if v is not in L.
IntVector to_lattice_coordinates(const Cone& c, const IntVector& v);

/// Extreme rays of the pointed cone { x : a_i . x >= 0 for every row a_i },
/// by the double description method. Rows of `constraints` must span the
/// ambient space. Output is primitive and sorted lexicographically.
std::vector<IntVector> double_description(
    const std::vector<IntVector>& constraints, std::size_t dim);

}  // namespace coxkit
