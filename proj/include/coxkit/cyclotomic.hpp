#pragma once

#include <string>
#include <vector>

#include "coxkit/exactgeom.hpp"

namespace coxkit {

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<Int>& cyclotomic_polynomial(unsigned n);
unsigned euler_phi(unsigned n);

/// Element of Q(z), z a primitive n-th root of unity, stored as the
/// coefficients (lowest first, exactly euler_phi(n) of them) of its reduced
/// representative modulo the n-th cyclotomic polynomial.
class CycloNum {
 public:
  CycloNum() : CycloNum(1) {}
  explicit CycloNum(unsigned conductor, const Rat& value = 0);

  /// Reduces an arbitrary coefficient list modulo the cyclotomic polynomial.
  static CycloNum from_coeffs(unsigned conductor, const std::vector<Rat>& coeffs);
  /// z^k for any integer k.
  static CycloNum root(unsigned conductor, long k);

  unsigned conductor() const noexcept { return n_; }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  /// Throws NotInvertible for zero.
  CycloNum inverse() const;

  friend bool operator==(const CycloNum&, const CycloNum&) = default;

 private:
  unsigned n_;
  std::vector<Rat> c_;
};

CycloNum operator+(CycloNum a, const CycloNum& b);
CycloNum operator-(CycloNum a, const CycloNum& b);
CycloNum operator*(CycloNum a, const CycloNum& b);

/// Printed as a polynomial in z, e.g. "z^2 - 1/2".
std::string to_string(const CycloNum& a);

using CycloMatrix = std::vector<std::vector<CycloNum>>;

CycloMatrix cyclo_identity(std::size_t dim, unsigned conductor);
CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
std::size_t cyclo_rank(CycloMatrix m);
CycloNum cyclo_det(CycloMatrix m);
CycloNum cyclo_trace(const CycloMatrix& m);
/// Throws NotInvertible.
CycloMatrix cyclo_inverse(const CycloMatrix& m);

}  // namespace coxkit
