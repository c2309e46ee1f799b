#include "coxkit/poly.hpp"

#include <cctype>
#include <map>

#include "coxkit/errors.hpp"

namespace coxkit {

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

Poly Poly::constant(std::size_t num_vars, const Rat& c) {
  Poly p(num_vars);
  p.add_term(Monomial(num_vars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Monomial m(num_vars, 0);
  m[index] = 1;
  return monomial(m);
}

Poly Poly::monomial(const Monomial& exponents, const Rat& c) {
  Poly p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && coxkit::total_degree(terms_.begin()->first) == 0);
}

Rat Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(coxkit::total_degree(terms_.rbegin()->first));
}

Poly Poly::homogeneous_part(unsigned degree) const {
  Poly out(num_vars_);
  for (const auto& [m, c] : terms_)
    if (coxkit::total_degree(m) == degree) out.terms_.emplace(m, c);
  return out;
}

bool Poly::involves(std::size_t var) const {
  for (const auto& [m, c] : terms_)
    if (m[var] != 0) return true;
  return false;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (m.size() != num_vars_)
    throw Error(ErrorCode::DimensionMismatch, "monomial has wrong number of variables");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.num_vars_ != num_vars_)
    throw Error(ErrorCode::DimensionMismatch, "polynomials live in different rings");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.num_vars_ != num_vars_)
    throw Error(ErrorCode::DimensionMismatch, "polynomials live in different rings");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Poly out(num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    out.add_term(d, c * m[var]);
  }
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(num_vars_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, const Rat& c) { return a *= c; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.num_vars() != b.num_vars())
    throw Error(ErrorCode::DimensionMismatch, "polynomials live in different rings");
  Poly out(a.num_vars());
  Monomial m(a.num_vars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

std::vector<std::string> default_var_names(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::string to_string(const Poly& p, const std::vector<std::string>& var_names) {
  if (var_names.size() != p.num_vars())
    throw Error(ErrorCode::DimensionMismatch, "wrong number of variable names");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rat mag = negative ? Rat(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const Poly& p) { return to_string(p, default_var_names(p.num_vars())); }

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError,
                "syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly result(names_.size());
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Poly t = term();
    result = negate ? -t : t;
    for (;;) {
      if (accept('+')) result += term();
      else if (accept('-')) result -= term();
      else return result;
    }
  }

  Poly term() {
    Poly result = factor();
    while (accept('*')) result = result * factor();
    return result;
  }

  Poly factor() {
    Poly b = base();
    if (accept('^')) {
      skip();
      const Int e = natural();
      if (!e.fits_uint_p()) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  Int natural() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return Int(text_.substr(start, pos_ - start));
  }

  Poly base() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat value(natural());
      if (accept('/')) {
        const Int den = natural();
        if (den == 0) fail("zero denominator");
        value /= Rat(den);
      }
      value.canonicalize();
      return Poly::constant(names_.size(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Poly::variable(names_.size(), i);
      throw Error(ErrorCode::UnknownVariable,
                  "unknown variable '" + name + "' at position " + std::to_string(start));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& var_names) {
  return Parser(text, var_names).parse();
}

PolyMap PolyMap::identity(std::size_t n) {
  PolyMap m;
  m.target_vars = n;
  for (std::size_t i = 0; i < n; ++i) m.images.push_back(Poly::variable(n, i));
  return m;
}

PolyMap parse_map(const std::vector<std::string>& images,
                  const std::vector<std::string>& var_names) {
  PolyMap m;
  m.target_vars = var_names.size();
  for (const auto& s : images) m.images.push_back(parse_poly(s, var_names));
  return m;
}

std::vector<std::string> to_strings(const PolyMap& m, const std::vector<std::string>& var_names) {
  std::vector<std::string> out;
  for (const auto& p : m.images) out.push_back(to_string(p, var_names));
  return out;
}

Poly substitute(const Poly& p, const PolyMap& m) {
  if (p.num_vars() != m.source_vars())
    throw Error(ErrorCode::DimensionMismatch, "polynomial and map disagree on variables");
  std::vector<std::vector<Poly>> powers(m.source_vars());
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(m.target_vars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * m.images[i]);
    return cache[e];
  };
  Poly out(m.target_vars);
  for (const auto& [mono, c] : p.terms()) {
    Poly t = Poly::constant(m.target_vars, c);
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] > 0) t = t * power(i, mono[i]);
    out += t;
  }
  return out;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  if (f.target_vars != g.source_vars())
    throw Error(ErrorCode::DimensionMismatch, "maps do not chain");
  PolyMap out;
  out.target_vars = g.target_vars;
  for (const auto& p : f.images) out.images.push_back(substitute(p, g));
  return out;
}

PolyMatrix jacobian(const PolyMap& m) {
  PolyMatrix j;
  for (const auto& p : m.images) {
    std::vector<Poly> row;
    for (std::size_t v = 0; v < m.target_vars; ++v) row.push_back(p.derivative(v));
    j.push_back(std::move(row));
  }
  return j;
}

Poly poly_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (n == 0) return Poly::constant(0, 1);
  if (n > 20) throw Error(ErrorCode::InvalidArgument, "matrix too large for cofactor expansion");
  const std::size_t vars = m[0][0].num_vars();
  // Minor on rows [n - |cols|, n) and the columns in the bitmask.
  std::map<unsigned long, Poly> memo;
  auto rec = [&](auto&& self, unsigned long cols, std::size_t row) -> Poly {
    if (row == n) return Poly::constant(vars, 1);
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Poly total(vars);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1ul << c))) continue;
      if (!m[row][c].is_zero()) {
        Poly term = m[row][c] * self(self, cols & ~(1ul << c), row + 1);
        if (sign > 0) total += term;
        else total -= term;
      }
      sign = -sign;
    }
    memo.emplace(cols, total);
    return total;
  };
  return rec(rec, (1ul << n) - 1, 0);
}

bool in_ideal_power(const Poly& p, const std::vector<std::size_t>& vars, unsigned k) {
  for (const auto& [m, c] : p.terms()) {
    unsigned d = 0;
    for (auto v : vars) {
      if (v >= m.size()) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
      d += m[v];
    }
    if (d < k) return false;
  }
  return true;
}

}  // namespace coxkit
