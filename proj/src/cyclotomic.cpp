#include "coxkit/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "coxkit/errors.hpp"

namespace coxkit {

namespace {

using RatPoly = std::vector<Rat>;  // lowest degree first

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder and quotient of a by a nonzero b.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rat f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(q);
  return {a, q};
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

RatPoly modulus(unsigned n) {
  const auto& phi = cyclotomic_polynomial(n);
  return RatPoly(phi.begin(), phi.end());
}

void check_same(const CycloNum& a, const CycloNum& b) {
  if (a.conductor() != b.conductor())
    throw Error(ErrorCode::DimensionMismatch, "cyclotomic numbers have different conductors");
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "conductor must be positive");
  static std::mutex lock;
  static std::map<unsigned, std::vector<Int>> cache;
  {
    std::lock_guard<std::mutex> g(lock);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
  RatPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divmod(p, modulus(d)).second;
  std::vector<Int> out;
  for (const Rat& c : p) out.push_back(c.get_num());
  std::lock_guard<std::mutex> g(lock);
  return cache.emplace(n, std::move(out)).first->second;
}

unsigned euler_phi(unsigned n) { return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1); }

CycloNum::CycloNum(unsigned conductor, const Rat& value) : n_(conductor), c_(euler_phi(conductor)) {
  c_[0] = value;
}

CycloNum CycloNum::from_coeffs(unsigned conductor, const std::vector<Rat>& coeffs) {
  CycloNum out(conductor);
  RatPoly in = coeffs;
  for (Rat& c : in) c.canonicalize();
  RatPoly r = divmod(in, modulus(conductor)).first;
  for (std::size_t i = 0; i < r.size(); ++i) out.c_[i] = r[i];
  return out;
}

CycloNum CycloNum::root(unsigned conductor, long k) {
  const long n = conductor;
  const long e = ((k % n) + n) % n;
  RatPoly p(e + 1);
  p[e] = 1;
  return from_coeffs(conductor, p);
}

bool CycloNum::is_zero() const {
  for (const Rat& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

CycloNum CycloNum::operator-() const {
  CycloNum out = *this;
  for (Rat& c : out.c_) c = -c;
  return out;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  check_same(*this, o);
  *this = from_coeffs(n_, mul(c_, o.c_));
  return *this;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NotInvertible, "zero has no inverse");
  // Extended Euclid: track s with s * a == r (mod the modulus).
  RatPoly r0 = modulus(n_), r1 = c_, s0, s1{1};
  trim(r1);
  while (r1.size() > 1) {
    auto [rem, q] = divmod(r0, r1);
    RatPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  for (Rat& c : s1) c /= r1[0];
  return from_coeffs(n_, s1);
}

CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }

std::string to_string(const CycloNum& a) {
  std::string out;
  for (std::size_t k = a.coeffs().size(); k-- > 0;) {
    const Rat& c = a.coeffs()[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rat mag = neg ? Rat(-c) : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    if (mono.empty())
      out += mag.get_str();
    else
      out += (mag == 1 ? "" : mag.get_str() + "*") + mono;
  }
  return out.empty() ? "0" : out;
}

CycloMatrix cyclo_identity(std::size_t dim, unsigned conductor) {
  CycloMatrix m(dim, std::vector<CycloNum>(dim, CycloNum(conductor)));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = CycloNum(conductor, 1);
  return m;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  if (!a.empty() && a[0].size() != k) throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  const unsigned cond = k ? b[0][0].conductor() : 1;
  CycloMatrix out(n, std::vector<CycloNum>(m, CycloNum(cond)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

namespace {

// Row echelon form in place; returns the rank and accumulates the
// determinant factor (sign changes and pivots).
std::size_t eliminate(CycloMatrix& m, CycloNum* det) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[r][c];
    const CycloNum inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const CycloNum f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t cyclo_rank(CycloMatrix m) { return eliminate(m, nullptr); }

CycloNum cyclo_det(CycloMatrix m) {
  if (m.empty()) return CycloNum(1, 1);
  if (m.size() != m[0].size()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  CycloNum det(m[0][0].conductor(), 1);
  if (eliminate(m, &det) < m.size()) return CycloNum(m[0][0].conductor());
  return det;
}

CycloNum cyclo_trace(const CycloMatrix& m) {
  CycloNum t(m.empty() ? 1 : m[0][0].conductor());
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

CycloMatrix cyclo_inverse(const CycloMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return m;
  const unsigned cond = m[0][0].conductor();
  CycloMatrix a = m;
  CycloMatrix inv = cyclo_identity(n, cond);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw Error(ErrorCode::NotInvertible, "matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const CycloNum pinv = a[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= pinv;
      inv[c][j] *= pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      const CycloNum f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace coxkit
