#include "coxkit/exactgeom.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "coxkit/errors.hpp"
#include "ratlinalg.hpp"

namespace coxkit {

using detail::RatMatrix;

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_)
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows,
                               std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorCode::DimensionMismatch, "rows of unequal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

void IntMatrix::set_row(std::size_t r, const IntVector& v) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size())
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

IntVector row_times(const IntVector& v, const IntMatrix& a) {
  if (a.rows() != v.size())
    throw Error(ErrorCode::DimensionMismatch, "vector-matrix shape");
  IntVector out(a.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[k] * a(k, j);
  }
  return out;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVector& a, const IntVector& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_nonnegative(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x >= 0; });
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(const IntVector& v) {
  const Int g = content(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive(const RatVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Int(v[i] * l);
  return primitive(out);
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) os << (r ? "," : "") << to_string(m.row(r));
  os << ']';
  return os.str();
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::NonSquare, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(sel, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
  RatMatrix m = detail::to_rat(a);
  return detail::rref(m, a.cols()).size();
}

std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols) {
  return rank(IntMatrix::from_rows(rows, cols));
}

// ---------------------------------------------------------------- HNF / SNF

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

// row_j -= q * row_i
void add_row_multiple(IntMatrix& m, std::size_t j, std::size_t i, const Int& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(j, c) -= q * m(i, c);
}

void add_col_multiple(IntMatrix& m, std::size_t j, std::size_t i, const Int& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, j) -= q * m(r, i);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
}

// (row_i, row_j) <- (s row_i + t row_j, -b/g row_i + a/g row_j)
void gcd_rows(IntMatrix& m, std::size_t i, std::size_t j, const Int& s,
              const Int& t, const Int& bg, const Int& ag) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Int x = m(i, c);
    Int y = m(j, c);
    m(i, c) = s * x + t * y;
    m(j, c) = ag * y - bg * x;
  }
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HnfResult hnf(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    if (h(row, col) == 0) {
      std::size_t sel = row + 1;
      while (sel < h.rows() && h(sel, col) == 0) ++sel;
      if (sel == h.rows()) continue;
      swap_rows(h, row, sel);
      swap_rows(u, row, sel);
    }
    for (std::size_t r = row + 1; r < h.rows(); ++r) {
      if (h(r, col) == 0) continue;
      const Int a0 = h(row, col);
      const Int b0 = h(r, col);
      if (b0 % a0 == 0) {
        const Int q = b0 / a0;
        add_row_multiple(h, r, row, q);
        add_row_multiple(u, r, row, q);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a0.get_mpz_t(),
                 b0.get_mpz_t());
      const Int bg = b0 / g;
      const Int ag = a0 / g;
      gcd_rows(h, row, r, s, t, bg, ag);
      gcd_rows(u, row, r, s, t, bg, ag);
    }
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (std::size_t r = 0; r < row; ++r) {
      const Int q = floor_div(h(r, col), h(row, col));
      if (q == 0) continue;
      add_row_multiple(h, r, row, q);
      add_row_multiple(u, r, row, q);
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SnfResult snf(const IntMatrix& a) {
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  IntMatrix v = IntMatrix::identity(a.cols());
  const std::size_t m = s.rows();
  const std::size_t n = s.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 &&
              (pi == m || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return {std::move(s), std::move(u), std::move(v)};
      if (pi != t) {
        swap_rows(s, t, pi);
        swap_rows(u, t, pi);
      }
      if (pj != t) {
        swap_cols(s, t, pj);
        swap_cols(v, t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        const Int q = s(i, t) / s(t, t);
        add_row_multiple(s, i, t, q);
        add_row_multiple(u, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        const Int q = s(t, j) / s(t, t);
        add_col_multiple(s, j, t, q);
        add_col_multiple(v, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            add_row_multiple(s, t, i, Int(-1));
            add_row_multiple(u, t, i, Int(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

IntMatrix row_lattice_basis(const IntMatrix& a) {
  const HnfResult r = hnf(a);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < r.h.rows(); ++i) {
    IntVector row = r.h.row(i);
    if (!is_zero(row)) rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, a.cols());
}

IntMatrix left_kernel(const IntMatrix& a) {
  const HnfResult r = hnf(a);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < r.h.rows(); ++i)
    if (is_zero(r.h.row(i))) rows.push_back(r.u.row(i));
  return IntMatrix::from_rows(rows, a.rows());
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis,
                                             const IntVector& v) {
  if (v.size() != basis.cols())
    throw Error(ErrorCode::DimensionMismatch, "lattice membership shape");
  const HnfResult r = hnf(basis);
  IntVector rest = v;
  IntVector ch(basis.rows());
  std::size_t col = 0;
  for (std::size_t i = 0; i < r.h.rows(); ++i) {
    while (col < r.h.cols() && r.h(i, col) == 0) {
      if (rest[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == r.h.cols()) break;
    if (rest[col] % r.h(i, col) != 0) return std::nullopt;
    ch[i] = rest[col] / r.h(i, col);
    for (std::size_t c = col; c < rest.size(); ++c) rest[c] -= ch[i] * r.h(i, c);
    ++col;
  }
  if (!is_zero(rest)) return std::nullopt;
  return row_times(ch, r.u);
}

std::optional<RatVector> span_coordinates(const IntMatrix& basis,
                                          const IntVector& v) {
  RatMatrix m(basis.cols(), RatVector(basis.rows()));
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < basis.cols(); ++c) m[c][r] = basis(r, c);
  RatVector b(v.begin(), v.end());
  return detail::solve(m, basis.rows(), b);
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  auto inv = detail::inverse(detail::to_rat(u));
  if (!inv) throw Error(ErrorCode::NotInvertible, "singular matrix");
  IntMatrix out(u.rows(), u.cols());
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) {
      if ((*inv)[r][c].get_den() != 1)
        throw Error(ErrorCode::NotInvertible, "matrix is not unimodular");
      out(r, c) = (*inv)[r][c].get_num();
    }
  return out;
}

// ---------------------------------------------------- double description

std::vector<IntVector> double_description(
    const std::vector<IntVector>& constraints, std::size_t dim) {
  if (dim == 0) return {};
  const std::size_t m = constraints.size();

  // Greedy choice of dim independent constraints for the initial simplex.
  std::vector<std::size_t> order;
  {
    std::vector<IntVector> chosen;
    for (std::size_t i = 0; i < m && chosen.size() < dim; ++i) {
      chosen.push_back(constraints[i]);
      if (rank(chosen, dim) == chosen.size())
        order.push_back(i);
      else
        chosen.pop_back();
    }
  }
  if (order.size() < dim)
    throw Error(ErrorCode::InvalidArgument,
                "double description: constraints do not span the space");
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(order.begin(), order.end(), i) == order.end())
      order.push_back(i);

  struct Ray {
    IntVector v;
    std::vector<char> zero;  // indexed by constraint
  };
  std::vector<Ray> rays;
  {
    RatMatrix a0(dim, RatVector(dim));
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) a0[r][c] = constraints[order[r]][c];
    const RatMatrix inv = *detail::inverse(a0);
    for (std::size_t j = 0; j < dim; ++j) {
      RatVector colv(dim);
      for (std::size_t r = 0; r < dim; ++r) colv[r] = inv[r][j];
      Ray ray{primitive(colv), std::vector<char>(m, 0)};
      for (std::size_t r = 0; r < dim; ++r)
        if (r != j) ray.zero[order[r]] = 1;
      rays.push_back(std::move(ray));
    }
  }

  std::vector<char> processed(m, 0);
  for (std::size_t r = 0; r < dim; ++r) processed[order[r]] = 1;

  for (std::size_t step = dim; step < m; ++step) {
    const std::size_t t = order[step];
    const IntVector& a = constraints[t];
    std::vector<Int> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) val[i] = dot(a, rays[i].v);

    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) next.push_back(rays[i]);
      if (val[i] == 0) {
        next.push_back(rays[i]);
        next.back().zero[t] = 1;
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t q = 0; q < rays.size(); ++q) {
        if (val[q] >= 0) continue;
        std::vector<char> common(m, 0);
        std::size_t count = 0;
        for (std::size_t c = 0; c < m; ++c)
          if (processed[c] && rays[p].zero[c] && rays[q].zero[c]) {
            common[c] = 1;
            ++count;
          }
        if (count + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          bool contains = true;
          for (std::size_t c = 0; c < m; ++c)
            if (common[c] && !rays[o].zero[c]) {
              contains = false;
              break;
            }
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector w(dim);
        for (std::size_t c = 0; c < dim; ++c)
          w[c] = val[p] * rays[q].v[c] - val[q] * rays[p].v[c];
        common[t] = 1;
        next.push_back({primitive(w), std::move(common)});
      }
    }
    rays = std::move(next);
    processed[t] = 1;
  }

  std::set<IntVector> uniq;
  for (auto& r : rays) uniq.insert(r.v);
  return {uniq.begin(), uniq.end()};
}

// --------------------------------------------------------------------- Cone

namespace {

/// The cone seen inside its own saturated span: sub is a row basis (in
/// coordinates of the cone lattice) of L ∩ span(rays); rays and facets are
/// expressed in sub coordinates where the cone is full-dimensional.
struct Frame {
  IntMatrix sub;          // d x k
  IntMatrix sub_ambient;  // d x n
  std::vector<IntVector> rays;
  std::vector<IntVector> facets;
};

IntMatrix saturated_span(const std::vector<IntVector>& coords, std::size_t k) {
  if (coords.empty()) return IntMatrix(0, k);
  const IntMatrix g = IntMatrix::from_rows(coords, k);
  const IntMatrix orth = left_kernel(g.transpose());
  if (orth.rows() == 0) return IntMatrix::identity(k);
  return row_lattice_basis(left_kernel(orth.transpose()));
}

IntVector require_coordinates(const IntMatrix& basis, const IntVector& v,
                              const char* what) {
  auto c = lattice_coordinates(basis, v);
  if (!c)
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " " + to_string(v) + " is not in the lattice");
  return *c;
}

Frame make_frame(std::size_t ambient_rank, const IntMatrix& lattice,
                 const std::vector<IntVector>& generators) {
  const std::size_t k = lattice.rows();
  std::vector<IntVector> coords;
  coords.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != ambient_rank)
      throw Error(ErrorCode::DimensionMismatch, "generator length");
    if (is_zero(g)) throw Error(ErrorCode::InvalidArgument, "zero generator");
    coords.push_back(require_coordinates(lattice, g, "generator"));
  }
  Frame f;
  f.sub = saturated_span(coords, k);
  f.sub_ambient = f.sub * lattice;
  const std::size_t d = f.sub.rows();
  std::vector<IntVector> sub_coords;
  for (const auto& c : coords)
    sub_coords.push_back(require_coordinates(f.sub, c, "generator"));
  if (d == 0) return f;
  f.facets = double_description(sub_coords, d);
  if (rank(f.facets, d) < d)
    throw Error(ErrorCode::NonPointed, "cone contains a line");
  f.rays = double_description(f.facets, d);
  return f;
}

bool facets_nonnegative(const std::vector<IntVector>& facets,
                        const IntVector& x) {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const IntVector& f) { return dot(f, x) >= 0; });
}

}  // namespace

Cone Cone::generated_by(std::size_t ambient_rank,
                        const std::vector<IntVector>& generators,
                        std::optional<IntMatrix> lattice) {
  IntMatrix basis = lattice ? row_lattice_basis(*lattice)
                            : IntMatrix::identity(ambient_rank);
  if (basis.cols() != ambient_rank)
    throw Error(ErrorCode::DimensionMismatch, "lattice basis width");
  const Frame f = make_frame(ambient_rank, basis, generators);
  Cone c;
  c.ambient_rank_ = ambient_rank;
  c.lattice_ = std::move(basis);
  c.dimension_ = f.sub.rows();
  for (const auto& r : f.rays) c.rays_.push_back(row_times(r, f.sub_ambient));
  std::sort(c.rays_.begin(), c.rays_.end());
  return c;
}

Cone Cone::orthant(std::size_t n) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return generated_by(n, gens);
}

std::vector<IntVector> facet_functionals(const Cone& c) {
  if (!c.is_full_dimensional())
    throw Error(ErrorCode::NotFullDimensional,
                "cone is not full-dimensional in its lattice");
  return make_frame(c.ambient_rank(), c.lattice(), c.rays()).facets;
}

Cone dual_cone(const Cone& c) {
  const std::size_t k = c.lattice().rows();
  return Cone::generated_by(k, facet_functionals(c));
}

IntVector to_lattice_coordinates(const Cone& c, const IntVector& v) {
  return require_coordinates(c.lattice(), v, "vector");
}

bool cone_contains(const Cone& c, const IntVector& v) {
  if (v.size() != c.ambient_rank())
    throw Error(ErrorCode::DimensionMismatch, "vector length");
  if (c.rays().empty()) return is_zero(v);
  const Frame f = make_frame(c.ambient_rank(), c.lattice(), c.rays());
  auto x = span_coordinates(f.sub_ambient, v);
  if (!x) return false;
  for (const auto& facet : f.facets) {
    Rat s = 0;
    for (std::size_t i = 0; i < facet.size(); ++i) s += (*x)[i] * facet[i];
    if (s < 0) return false;
  }
  return true;
}

namespace {

using Simplex = std::vector<std::size_t>;

void triangulate(const std::vector<IntVector>& rays,
                 const std::vector<std::vector<std::size_t>>& facet_sets,
                 const std::vector<std::size_t>& face, std::size_t face_dim,
                 std::vector<Simplex>& out) {
  if (face.size() == face_dim) {
    out.push_back(face);
    return;
  }
  const std::size_t apex = face.front();
  std::set<std::vector<std::size_t>> subfaces;
  for (const auto& fs : facet_sets) {
    std::vector<std::size_t> meet;
    std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(),
                          std::back_inserter(meet));
    if (meet.empty() || meet.size() == face.size()) continue;
    std::vector<IntVector> rows;
    for (auto i : meet) rows.push_back(rays[i]);
    if (rank(rows, rays.front().size()) + 1 == face_dim) subfaces.insert(meet);
  }
  for (const auto& sub : subfaces) {
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    std::vector<Simplex> part;
    triangulate(rays, facet_sets, sub, face_dim - 1, part);
    for (auto& s : part) {
      s.push_back(apex);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
  }
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the rows
/// of the simplicial cone `v`.
void parallelepiped_points(const IntMatrix& v, std::set<IntVector>& out) {
  const std::size_t d = v.rows();
  const SnfResult s = snf(v);
  const IntMatrix w_inv = unimodular_inverse(s.v);
  const auto v_inv = *detail::inverse(detail::to_rat(v));
  std::vector<Int> radix(d);
  for (std::size_t i = 0; i < d; ++i) radix[i] = s.s(i, i);
  IntVector y(d);
  for (;;) {
    IntVector x = row_times(y, w_inv);
    // Reduce modulo the simplex lattice into the half-open box.
    RatVector lambda(d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) lambda[j] += x[i] * v_inv[i][j];
    RatVector acc(d);
    for (std::size_t j = 0; j < d; ++j) {
      const Rat frac = lambda[j] - detail::floor_rat(lambda[j]);
      if (frac == 0) continue;
      for (std::size_t c = 0; c < d; ++c) acc[c] += frac * v(j, c);
    }
    IntVector red(d);
    for (std::size_t c = 0; c < d; ++c) red[c] = acc[c].get_num();
    if (!is_zero(red)) out.insert(red);
    std::size_t i = 0;
    for (; i < d; ++i) {
      ++y[i];
      if (y[i] < radix[i]) break;
      y[i] = 0;
    }
    if (i == d) break;
  }
}

}  // namespace

std::vector<IntVector> hilbert_basis(const Cone& c) {
  if (c.rays().empty()) return {};
  const Frame f = make_frame(c.ambient_rank(), c.lattice(), c.rays());
  const std::size_t d = f.sub.rows();

  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& facet : f.facets) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
      if (dot(facet, f.rays[i]) == 0) s.push_back(i);
    facet_sets.push_back(std::move(s));
  }
  std::vector<std::size_t> all(f.rays.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Simplex> simplices;
  triangulate(f.rays, facet_sets, all, d, simplices);

  std::set<IntVector> candidates(f.rays.begin(), f.rays.end());
  for (const auto& s : simplices) {
    std::vector<IntVector> rows;
    for (auto i : s) rows.push_back(f.rays[i]);
    parallelepiped_points(IntMatrix::from_rows(rows), candidates);
  }

  // Grading strictly positive on the cone minus the origin.
  IntVector grading(d);
  for (const auto& facet : f.facets) grading = grading + facet;
  std::vector<std::pair<Int, IntVector>> sorted;
  for (const auto& x : candidates) sorted.emplace_back(dot(grading, x), x);
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::pair<Int, IntVector>> basis;
  for (const auto& [deg, x] : sorted) {
    bool reducible = false;
    for (const auto& [hdeg, h] : basis) {
      if (hdeg >= deg) break;
      if (facets_nonnegative(f.facets, x - h)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.emplace_back(deg, x);
  }
  std::vector<IntVector> out;
  for (const auto& [deg, x] : basis) out.push_back(row_times(x, f.sub_ambient));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coxkit
