#include "coxkit/toric_cox.hpp"

#include <algorithm>

#include "coxkit/errors.hpp"

namespace coxkit {

CoxData cox_data(const Cone& c, const std::optional<std::vector<IntVector>>& ray_order) {
  if (!c.is_full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "cone is not full-dimensional");
  CoxData cd{c, {c.rays().rbegin(), c.rays().rend()}, {}, {}, {}, {}};
  if (ray_order) {
    auto a = *ray_order, b = c.rays();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(ErrorCode::InvalidArgument, "ray order is not a permutation of the rays");
    cd.rays = *ray_order;
  }
  const std::size_t n = c.lattice().rows();
  const std::size_t r = cd.rays.size();

  std::vector<IntVector> coords;
  for (const IntVector& v : cd.rays) coords.push_back(to_lattice_coordinates(c, v));
  const IntMatrix a = IntMatrix::from_rows(coords, n);  // r x n
  cd.ray_pairing = a.transpose();

  const SnfResult s = snf(a);
  for (std::size_t j = 0; j < n; ++j)
    if (s.s(j, j) > 1) cd.cl_group.torsion.push_back(s.s(j, j));
  cd.cl_group.free_rank = r - n;

  IntMatrix free_rows(r - n, r);
  for (std::size_t j = n; j < r; ++j) free_rows.set_row(j - n, s.u.row(j));
  const IntMatrix h = hnf(free_rows).h;

  for (std::size_t i = 0; i < r; ++i) {
    IntVector f(r - n), t;
    for (std::size_t j = 0; j < r - n; ++j) f[j] = h(j, i);
    for (std::size_t j = 0; j < n; ++j)
      if (s.s(j, j) > 1) t.push_back(s.u(j, i));
    cd.var_degrees.push_back(make_elem(cd.cl_group, f, t));
  }
  cd.characters = hilbert_basis(dual_cone(c));
  return cd;
}

CoxData quadric_cox_data() {
  const std::vector<IntVector> order{make_vector({0, 0, 1}), make_vector({1, 1, 1}),
                                     make_vector({0, 1, 1}), make_vector({1, 0, 1})};
  return cox_data(Cone::generated_by(3, order), order);
}

GradedRing cox_ring(const CoxData& cd) {
  return GradedRing{cd.rays.size(), cd.cl_group, cd.var_degrees};
}

Poly pullback(const CoxData& cd, const IntVector& u) {
  if (u.size() != cd.ray_pairing.rows())
    throw Error(ErrorCode::DimensionMismatch, "character has wrong length");
  const IntVector e = row_times(u, cd.ray_pairing);
  Monomial m;
  for (const Int& x : e) {
    if (x < 0) throw Error(ErrorCode::NotInDualCone, "character is negative on a ray");
    m.push_back(static_cast<unsigned>(x.get_ui()));
  }
  return Poly::monomial(m);
}

PolyMap quotient_map(const CoxData& cd) {
  PolyMap q;
  q.target_vars = cd.rays.size();
  for (const IntVector& u : cd.characters) q.images.push_back(pullback(cd, u));
  return q;
}

namespace {

// Greedy decomposition into Hilbert basis elements; never backtracks because
// the dual monoid is saturated.
Monomial decompose(const CoxData& cd, IntVector u) {
  Monomial out(cd.characters.size(), 0);
  while (!is_zero(u)) {
    bool stepped = false;
    for (std::size_t j = 0; j < cd.characters.size() && !stepped; ++j) {
      const IntVector rest = u - cd.characters[j];
      if (is_nonnegative(row_times(rest, cd.ray_pairing))) {
        u = rest;
        ++out[j];
        stepped = true;
      }
    }
    if (!stepped) throw Error(ErrorCode::NotInDualCone, "character outside the dual cone");
  }
  return out;
}

}  // namespace

Poly descend(const CoxData& cd, const Poly& p) {
  if (p.num_vars() != cd.rays.size())
    throw Error(ErrorCode::DimensionMismatch, "polynomial must live in the Cox ring");
  Poly out(cd.characters.size());
  for (const auto& [m, c] : p.terms()) {
    IntVector a(m.begin(), m.end());
    const auto u = lattice_coordinates(cd.ray_pairing, a);
    if (!u) throw Error(ErrorCode::InvalidArgument, "term has nonzero degree");
    out.add_term(decompose(cd, *u), c);
  }
  return out;
}

PolyMap induced_map(const CoxData& cd, const GradedEndo& phi) {
  if (phi.ring.num_vars != cd.rays.size())
    throw Error(ErrorCode::DimensionMismatch, "phi must act on the Cox ring");
  if (check_normalizes(phi).kind == NormalizeReport::Kind::Neither)
    throw Error(ErrorCode::NotGradingPreserving, "phi does not normalize the grading");
  const PolyMap q = quotient_map(cd);
  PolyMap psi;
  psi.target_vars = q.source_vars();
  for (const Poly& img : q.images) psi.images.push_back(descend(cd, substitute(img, phi.map)));
  return psi;
}

namespace {

void check_psi(const CoxData& cd, const PolyMap& psi) {
  const std::size_t k = cd.characters.size();
  if (psi.source_vars() != k || psi.target_vars != k)
    throw Error(ErrorCode::DimensionMismatch, "psi must give one image per coordinate of X");
}

}  // namespace

bool verify_lift(const CoxData& cd, const PolyMap& psi, const GradedEndo& phi, LiftConvention conv) {
  check_psi(cd, psi);
  if (phi.ring.num_vars != cd.rays.size())
    throw Error(ErrorCode::DimensionMismatch, "phi must act on the Cox ring");
  if (check_normalizes(phi).kind == NormalizeReport::Kind::Neither) return false;
  const PolyMap q = quotient_map(cd);
  if (conv == LiftConvention::Pullback) {
    for (std::size_t j = 0; j < q.source_vars(); ++j)
      if (substitute(psi.images[j], q) != substitute(q.images[j], phi.map)) return false;
    return true;
  }
  const PolyMap lifted = compose(q, phi.map);  // x_k -> phi(q*(x_k))
  for (std::size_t j = 0; j < q.source_vars(); ++j)
    if (substitute(psi.images[j], lifted) != q.images[j]) return false;
  return true;
}

std::optional<std::size_t> first_violated_relation(const CoxData& cd, const PolyMap& psi,
                                                   const std::vector<Poly>& relations) {
  check_psi(cd, psi);
  const PolyMap q = compose(psi, quotient_map(cd));
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (!substitute(relations[i], q).is_zero()) return i;
  return std::nullopt;
}

}  // namespace coxkit
