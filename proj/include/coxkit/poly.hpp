#pragma once

#include <map>
#include <string>
#include <vector>

#include "coxkit/exactgeom.hpp"

namespace coxkit {

using Monomial = std::vector<unsigned>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// y1 > y2 > ... .
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

unsigned total_degree(const Monomial& m);

/// Sparse polynomial with rational coefficients. Zero coefficients are never
/// stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rat, GrlexLess>;

  explicit Poly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Poly constant(std::size_t num_vars, const Rat& c);
  static Poly variable(std::size_t num_vars, std::size_t index);
  static Poly monomial(const Monomial& exponents, const Rat& c = 1);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rat coefficient(const Monomial& m) const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  /// Sum of the terms of the given total degree.
  Poly homogeneous_part(unsigned degree) const;
  bool involves(std::size_t var) const;

  void add_term(const Monomial& m, const Rat& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rat& c);

  Poly derivative(std::size_t var) const;
  Poly pow(unsigned k) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::size_t num_vars_;
  Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const Rat& c);

std::vector<std::string> default_var_names(std::size_t n, const std::string& prefix = "y");

/// Canonical text: terms in descending grlex order, "c*y1^2*y3" style, with
/// unit coefficients omitted. The zero polynomial prints as "0".
std::string to_string(const Poly& p, const std::vector<std::string>& var_names);
std::string to_string(const Poly& p);

/// Parses the polynomial grammar
///   expr := ('+'|'-')? term (('+'|'-') term)*
///   term := factor ('*' factor)*     factor := base ('^' nat)?
///   base := rational | ident | '(' expr ')'    rational := int ('/' nat)?
/// Throws SyntaxError (message carries the 0-based position) or
/// UnknownVariable.
Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names);

/// Ring map given by the images of source variables in target variables.
struct PolyMap {
  std::size_t target_vars = 0;
  std::vector<Poly> images;

  std::size_t source_vars() const noexcept { return images.size(); }
  static PolyMap identity(std::size_t n);
  friend bool operator==(const PolyMap&, const PolyMap&) = default;
};

PolyMap parse_map(const std::vector<std::string>& images,
                  const std::vector<std::string>& var_names);
std::vector<std::string> to_strings(const PolyMap& m, const std::vector<std::string>& var_names);

/// Simultaneous substitution y_i -> m.images[i].
Poly substitute(const Poly& p, const PolyMap& m);

/// (f ∘ g)_i = substitute(f_i, g).
PolyMap compose(const PolyMap& f, const PolyMap& g);

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Entry (i, j) is the derivative of image i by target variable j.
PolyMatrix jacobian(const PolyMap& m);

/// Cofactor expansion with memoized minors. Throws NonSquare.
Poly poly_det(const PolyMatrix& m);

/// Whether every term of p has degree >= k in the variables of `vars`
/// (0-based), i.e. p lies in the k-th power of the ideal they generate.
bool in_ideal_power(const Poly& p, const std::vector<std::size_t>& vars, unsigned k);

}  // namespace coxkit
