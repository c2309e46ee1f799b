#include "coxkit/finite_quotient.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "coxkit/errors.hpp"

namespace coxkit {

namespace {

std::vector<Rat> key(const CycloMatrix& m) {
  std::vector<Rat> k;
  for (const auto& row : m)
    for (const CycloNum& x : row) k.insert(k.end(), x.coeffs().begin(), x.coeffs().end());
  return k;
}

using Subgroup = std::vector<bool>;

Subgroup generate(const MatGroup& g, const std::vector<std::size_t>& gens) {
  Subgroup in(g.order(), false);
  in[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t s : gens) {
      const std::size_t y = g.multiply(x, s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  }
  return in;
}

std::size_t count(const Subgroup& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

Subgroup normal_closure(const MatGroup& g, std::vector<std::size_t> gens) {
  const auto ambient = g.generator_indices();
  for (;;) {
    const Subgroup sub = generate(g, gens);
    bool grown = false;
    const std::size_t n = gens.size();
    for (std::size_t a : ambient)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = g.multiply(g.multiply(a, gens[i]), g.inverse(a));
        if (!sub[c] && std::find(gens.begin(), gens.end(), c) == gens.end()) {
          gens.push_back(c);
          grown = true;
        }
      }
    if (!grown) return sub;
  }
}

}  // namespace

std::size_t MatGroup::index_of(const CycloMatrix& m) const {
  const auto it = index_.find(key(m));
  return it == index_.end() ? npos : it->second;
}

std::size_t MatGroup::multiply(std::size_t a, std::size_t b) const {
  const std::size_t r = index_of(elements_[a] * elements_[b]);
  if (r == npos) throw Error(ErrorCode::InvalidArgument, "group is not closed");
  return r;
}

std::size_t MatGroup::inverse(std::size_t a) const { return index_of(cyclo_inverse(elements_[a])); }

std::vector<std::size_t> MatGroup::generator_indices() const {
  std::vector<std::size_t> out;
  for (const auto& m : generators_) out.push_back(index_of(m));
  return out;
}

MatGroup close_group(std::size_t dim, unsigned conductor, const std::vector<CycloMatrix>& generators,
                     std::size_t cap) {
  MatGroup g;
  g.dim_ = dim;
  g.conductor_ = conductor;
  for (const CycloMatrix& m : generators) {
    if (m.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator has wrong size");
    for (const auto& row : m) {
      if (row.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator is not square");
      for (const CycloNum& x : row)
        if (x.conductor() != conductor)
          throw Error(ErrorCode::DimensionMismatch, "entries must share the group's conductor");
    }
    if (cyclo_det(m).is_zero()) throw Error(ErrorCode::NotInvertible, "generator is singular");
  }
  g.generators_ = generators;
  auto add = [&](CycloMatrix m) {
    if (g.elements_.size() >= cap)
      throw Error(ErrorCode::ClosureCapExceeded,
                  "closure exceeds " + std::to_string(cap) + " elements");
    g.index_.emplace(key(m), g.elements_.size());
    g.elements_.push_back(std::move(m));
  };
  add(cyclo_identity(dim, conductor));
  for (std::size_t i = 0; i < g.elements_.size(); ++i)
    for (const CycloMatrix& s : generators) {
      CycloMatrix p = g.elements_[i] * s;
      if (g.index_of(p) == MatGroup::npos) add(std::move(p));
    }
  return g;
}

std::vector<std::size_t> pseudoreflections(const MatGroup& g) {
  std::vector<std::size_t> out;
  const CycloMatrix id = cyclo_identity(g.dim(), g.conductor());
  for (std::size_t i = 0; i < g.order(); ++i) {
    CycloMatrix d = g.elements()[i];
    for (std::size_t r = 0; r < g.dim(); ++r) d[r][r] -= id[r][r];
    if (cyclo_rank(d) == 1) out.push_back(i);
  }
  return out;
}

QuotientReport quotient_report(const MatGroup& g) {
  QuotientReport rep;
  rep.order_g = g.order();
  const std::vector<std::size_t> refl = pseudoreflections(g);
  const Subgroup h = generate(g, refl);
  rep.order_h = count(h);

  const auto gens = g.generator_indices();
  std::vector<std::size_t> seeds = refl;
  for (std::size_t a : gens)
    for (std::size_t b : gens)
      seeds.push_back(g.multiply(g.multiply(a, b), g.multiply(g.inverse(a), g.inverse(b))));
  const Subgroup ht = normal_closure(g, seeds);
  rep.order_htilde = count(ht);
  rep.commutant_order = rep.order_htilde / rep.order_h;
  rep.f_abelian = rep.order_htilde == rep.order_h;
  rep.is_toric = rep.f_abelian;

  // Coset labels for G / H~, then relations from the Cayley graph of N on
  // the images of the generators.
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < g.order(); ++i)
    if (ht[i]) members.push_back(i);
  std::vector<std::size_t> label(g.order(), MatGroup::npos);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (label[x] != MatGroup::npos) continue;
    for (std::size_t m : members) label[g.multiply(x, m)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t k = gens.size();
  std::vector<IntVector> coord(reps.size());
  std::vector<IntVector> relations;
  coord[0] = IntVector(k, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t d = label[g.multiply(reps[c], gens[i])];
      IntVector step = coord[c];
      step[i] += 1;
      if (coord[d].empty()) {
        coord[d] = step;
        queue.push_back(d);
      } else if (step != coord[d]) {
        relations.push_back(step - coord[d]);
      }
    }
  }
  if (k > 0) {
    const SnfResult s = snf(IntMatrix::from_rows(relations, k));
    for (std::size_t i = 0; i < std::min(s.s.rows(), k); ++i)
      if (s.s(i, i) > 1) rep.n_invariants.push_back(s.s(i, i));
  }
  return rep;
}

std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned degree) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  Monomial m(n, 0);
  // Lexicographically descending compositions of `degree` into n parts.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, degree);
  return out;
}

namespace {

CycloPoly poly_mul(const CycloPoly& a, const CycloPoly& b) {
  CycloPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto [it, fresh] = out.emplace(m, ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
  return out;
}

}  // namespace

std::string to_string(const CycloPoly& p, const std::vector<std::string>& names) {
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string coef;
    bool neg = false;
    if (c.is_rational()) {
      Rat v = c.coeffs()[0];
      neg = v < 0;
      if (neg) v = -v;
      coef = (v == 1 && !mono.empty()) ? "" : v.get_str();
    } else {
      coef = "(" + to_string(c) + ")";
    }
    std::string term = coef;
    if (!mono.empty()) term += (coef.empty() ? "" : "*") + mono;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::vector<CycloPoly> reynolds_invariants(const MatGroup& g, unsigned degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  const std::size_t n = g.dim();
  const unsigned cond = g.conductor();
  const std::vector<Monomial> basis = monomials_of_degree(n, degree);

  // Sums over the group; the 1/|G| factor does not change the span.
  std::vector<CycloPoly> averaged(basis.size());
  for (const CycloMatrix& a : g.elements()) {
    // x_i -> sum_j a_ij x_j
    std::vector<CycloPoly> forms(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!a[i][j].is_zero()) {
          Monomial e(n, 0);
          e[j] = 1;
          forms[i].emplace(e, a[i][j]);
        }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      CycloPoly img{{Monomial(n, 0), CycloNum(cond, 1)}};
      for (std::size_t i = 0; i < n; ++i)
        for (unsigned e = 0; e < basis[b][i]; ++e) img = poly_mul(img, forms[i]);
      for (const auto& [m, c] : img) {
        auto [it, fresh] = averaged[b].emplace(m, c);
        if (!fresh) it->second += c;
      }
    }
  }

  // Rows over the monomial basis, reduced to echelon form.
  std::map<Monomial, std::size_t, GrlexLess> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;
  CycloMatrix rows;
  for (const CycloPoly& p : averaged) {
    std::vector<CycloNum> row(basis.size(), CycloNum(cond));
    for (const auto& [m, c] : p) row[col.at(m)] = c;
    rows.push_back(row);
  }
  std::vector<CycloPoly> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < basis.size() && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const CycloNum inv = rows[r][c].inverse();
    for (CycloNum& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const CycloNum f = rows[i][c];
      for (std::size_t j = 0; j < basis.size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) {
    CycloPoly p;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!rows[i][j].is_zero()) p.emplace(basis[j], rows[i][j]);
    out.push_back(p);
  }
  return out;
}

}  // namespace coxkit
