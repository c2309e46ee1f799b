#include "coxkit/grading.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "coxkit/errors.hpp"
#include "ratlinalg.hpp"

namespace coxkit {

namespace {

Int mod_floor(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

IntVector flatten(const GroupElem& e) {
  IntVector v = e.free_part;
  v.insert(v.end(), e.torsion_part.begin(), e.torsion_part.end());
  return v;
}

GroupElem unflatten(const AbGroup& g, const IntVector& v) {
  return make_elem(g, IntVector(v.begin(), v.begin() + g.free_rank),
                   IntVector(v.begin() + g.free_rank, v.end()));
}

// Rows of the vectors followed by one row d_j e_{f+j} per torsion factor.
IntMatrix with_moduli(const AbGroup& g, const std::vector<IntVector>& rows) {
  std::vector<IntVector> all = rows;
  for (std::size_t j = 0; j < g.torsion.size(); ++j) {
    IntVector m(g.width(), 0);
    m[g.free_rank + j] = g.torsion[j];
    all.push_back(m);
  }
  return IntMatrix::from_rows(all, g.width());
}

IntMatrix subgroup_basis(const AbGroup& g, const std::vector<IntVector>& gens) {
  return row_lattice_basis(with_moduli(g, gens));
}

// Integer relations x with sum x_i v_i == 0 in the group.
std::vector<IntVector> relations(const AbGroup& g, const std::vector<IntVector>& vs) {
  const IntMatrix k = left_kernel(with_moduli(g, vs));
  std::vector<IntVector> out;
  for (std::size_t r = 0; r < k.rows(); ++r) {
    IntVector row = k.row(r);
    row.resize(vs.size());
    out.push_back(row);
  }
  return out;
}

bool vanishes(const AbGroup& g, const IntVector& v) {
  for (std::size_t i = 0; i < g.free_rank; ++i)
    if (v[i] != 0) return false;
  for (std::size_t j = 0; j < g.torsion.size(); ++j)
    if (mod_floor(v[g.free_rank + j], g.torsion[j]) != 0) return false;
  return true;
}

IntVector combine(const std::vector<IntVector>& vs, const IntVector& coeffs, std::size_t width) {
  IntVector out(width, 0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t c = 0; c < width; ++c) out[c] += coeffs[i] * vs[i][c];
  return out;
}

Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

void check_index(const GradedRing& r, std::size_t i) {
  if (i >= r.num_vars) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
}

void check_ring(const GradedRing& r, const Poly& f) {
  if (f.num_vars() != r.num_vars)
    throw Error(ErrorCode::DimensionMismatch, "polynomial has wrong number of variables");
}

GradedEndo update(const GradedRing& r, std::size_t i, const Poly& f, EndoKind kind) {
  GradedEndo e;
  e.ring = r;
  e.map = PolyMap::identity(r.num_vars);
  e.map.images[i] += f;
  e.kind = kind;
  e.index = i;
  e.increment = f;
  return e;
}

bool is_linear_form(const Poly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return total_degree(t.first) == 1; });
}

}  // namespace

void AbGroup::validate() const {
  for (std::size_t j = 0; j < torsion.size(); ++j) {
    if (torsion[j] < 2) throw Error(ErrorCode::InvalidArgument, "torsion orders must be >= 2");
    if (j > 0 && torsion[j] % torsion[j - 1] != 0)
      throw Error(ErrorCode::InvalidArgument, "torsion orders must form a divisibility chain");
  }
}

GroupElem make_elem(const AbGroup& g, const IntVector& free_part, const IntVector& torsion_part) {
  if (free_part.size() != g.free_rank ||
      (!torsion_part.empty() && torsion_part.size() != g.torsion.size()))
    throw Error(ErrorCode::DimensionMismatch, "group element has wrong shape");
  GroupElem e{free_part, IntVector(g.torsion.size(), 0)};
  for (std::size_t j = 0; j < torsion_part.size(); ++j)
    e.torsion_part[j] = mod_floor(torsion_part[j], g.torsion[j]);
  return e;
}

GroupElem zero_elem(const AbGroup& g) { return make_elem(g, IntVector(g.free_rank, 0)); }

GroupElem add(const AbGroup& g, const GroupElem& a, const GroupElem& b) {
  return make_elem(g, a.free_part + b.free_part, a.torsion_part + b.torsion_part);
}

GroupElem scale(const AbGroup& g, const Int& k, const GroupElem& a) {
  IntVector f = a.free_part, t = a.torsion_part;
  for (auto& x : f) x *= k;
  for (auto& x : t) x *= k;
  return make_elem(g, f, t);
}

std::string to_string(const GroupElem& e) {
  std::string s = to_string(e.free_part);
  if (!e.torsion_part.empty()) s += "+" + to_string(e.torsion_part);
  return s;
}

void GradedRing::validate() const {
  group.validate();
  if (var_degrees.size() != num_vars)
    throw Error(ErrorCode::DimensionMismatch, "need one degree per variable");
  for (const auto& d : var_degrees)
    if (d.free_part.size() != group.free_rank || d.torsion_part.size() != group.torsion.size())
      throw Error(ErrorCode::DimensionMismatch, "degree has wrong shape");
}

GroupElem GradedRing::monomial_degree(const Monomial& m) const {
  GroupElem d = zero_elem(group);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) d = add(group, d, scale(group, Int(m[i]), var_degrees[i]));
  return d;
}

GradedRing integer_grading(const std::vector<long>& degrees) {
  GradedRing r;
  r.num_vars = degrees.size();
  r.group.free_rank = 1;
  for (long d : degrees) r.var_degrees.push_back(GroupElem{make_vector({d}), {}});
  return r;
}

GradedRing quadric_ring() { return integer_grading({1, 1, -1, -1}); }

DegreeResult degree_of(const Poly& p, const GradedRing& r) {
  check_ring(r, p);
  if (p.is_zero()) return {DegreeResult::Kind::Zero, std::nullopt, std::nullopt, std::nullopt};
  const Monomial& first = p.terms().begin()->first;
  const GroupElem d = r.monomial_degree(first);
  for (const auto& [m, c] : p.terms())
    if (r.monomial_degree(m) != d) return {DegreeResult::Kind::NotHomogeneous, std::nullopt, first, m};
  return {DegreeResult::Kind::Homogeneous, d, std::nullopt, std::nullopt};
}

GradedEndo GradedEndo::general(GradedRing ring, PolyMap map) {
  ring.validate();
  if (map.source_vars() != ring.num_vars || map.target_vars != ring.num_vars)
    throw Error(ErrorCode::DimensionMismatch, "endomorphism must map the ring to itself");
  for (std::size_t i = 0; i < ring.num_vars; ++i)
    if (degree_of(map.images[i], ring).kind == DegreeResult::Kind::NotHomogeneous)
      throw Error(ErrorCode::ImagesNotHomogeneous,
                  "image of y" + std::to_string(i + 1) + " is not homogeneous");
  GradedEndo e;
  e.ring = std::move(ring);
  e.map = std::move(map);
  return e;
}

NormalizeReport check_normalizes(const GradedEndo& e) {
  const GradedRing& r = e.ring;
  const AbGroup& g = r.group;
  std::vector<IntVector> d, img;
  for (std::size_t i = 0; i < r.num_vars; ++i) {
    const DegreeResult dr = degree_of(e.map.images[i], r);
    if (dr.kind == DegreeResult::Kind::NotHomogeneous)
      throw Error(ErrorCode::ImagesNotHomogeneous,
                  "image of y" + std::to_string(i + 1) + " is not homogeneous");
    if (dr.kind == DegreeResult::Kind::Zero)
      return {NormalizeReport::Kind::Neither, std::nullopt,
              "image of y" + std::to_string(i + 1) + " is zero"};
    d.push_back(flatten(r.var_degrees[i]));
    img.push_back(flatten(*dr.degree));
  }
  const std::size_t w = g.width();

  for (const IntVector& rel : relations(g, d))
    if (!vanishes(g, combine(img, rel, w)))
      return {NormalizeReport::Kind::Neither, std::nullopt,
              "degree map not well defined on relation " + to_string(rel)};

  // phi0 on the standard generators, when the variable degrees generate.
  std::optional<IntMatrix> phi;
  const IntMatrix md = with_moduli(g, d);
  const HnfResult h = hnf(md);
  if (row_lattice_basis(md) == IntMatrix::identity(w)) {
    IntMatrix m(w, w);
    for (std::size_t k = 0; k < w; ++k) {
      IntVector coeffs = h.u.row(k);
      coeffs.resize(d.size());
      const GroupElem im = unflatten(g, combine(img, coeffs, w));
      const IntVector col = flatten(im);
      for (std::size_t c = 0; c < w; ++c) m(c, k) = col[c];
    }
    phi = m;
  }

  for (const IntVector& rel : relations(g, img))
    if (!vanishes(g, combine(d, rel, w)))
      return {NormalizeReport::Kind::Neither, phi, "degree map not injective on relation " + to_string(rel)};
  if (subgroup_basis(g, img) != subgroup_basis(g, d))
    return {NormalizeReport::Kind::Neither, phi, "degree map not surjective"};

  bool same = true;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!vanishes(g, img[i] - d[i])) same = false;
  return {same ? NormalizeReport::Kind::Preserves : NormalizeReport::Kind::Normalizes, phi, ""};
}

GradedEndo elementary_linear(const GradedRing& r, const std::vector<std::vector<Rat>>& matrix) {
  r.validate();
  const std::size_t n = r.num_vars;
  if (matrix.size() != n) throw Error(ErrorCode::DimensionMismatch, "linear map must be square");
  for (const auto& row : matrix)
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "linear map must be square");
  if (!detail::inverse(matrix)) throw Error(ErrorCode::SingularLinear, "linear map is singular");
  PolyMap m;
  m.target_vars = n;
  for (std::size_t i = 0; i < n; ++i) {
    Poly p(n);
    for (std::size_t j = 0; j < n; ++j)
      if (matrix[i][j] != 0) p += var(n, j) * matrix[i][j];
    m.images.push_back(p);
  }
  GradedEndo e = GradedEndo::general(r, std::move(m));
  e.kind = EndoKind::Linear;
  return e;
}

GradedEndo coordinate_update(const GradedRing& r, std::size_t i, const Poly& f) {
  r.validate();
  check_index(r, i);
  check_ring(r, f);
  const DegreeResult dr = degree_of(f, r);
  if (dr.kind == DegreeResult::Kind::NotHomogeneous ||
      (dr.kind == DegreeResult::Kind::Homogeneous && *dr.degree != r.var_degrees[i]))
    throw Error(ErrorCode::NotHomogeneousShear,
                "increment is not homogeneous of degree deg(y" + std::to_string(i + 1) + ")");
  return update(r, i, f, EndoKind::CoordinateUpdate);
}

GradedEndo elementary_shear(const GradedRing& r, std::size_t i, const Poly& f) {
  check_index(r, i);
  check_ring(r, f);
  if (f.involves(i))
    throw Error(ErrorCode::DependsOnTarget, "shear increment involves y" + std::to_string(i + 1));
  GradedEndo e = coordinate_update(r, i, f);
  e.kind = EndoKind::Shear;
  return e;
}

std::optional<GradedEndo> as_elementary(const GradedRing& r, const PolyMap& m) {
  const std::size_t n = r.num_vars;
  if (m.source_vars() != n || m.target_vars != n) return std::nullopt;
  if (std::all_of(m.images.begin(), m.images.end(), is_linear_form)) {
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [mono, c] : m.images[i].terms())
        a[i][std::find(mono.begin(), mono.end(), 1u) - mono.begin()] = c;
    try {
      return elementary_linear(r, a);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  std::optional<std::size_t> changed;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.images[i] == var(n, i)) continue;
    if (changed) return std::nullopt;
    changed = i;
  }
  if (!changed) return std::nullopt;
  try {
    return elementary_shear(r, *changed, m.images[*changed] - var(n, *changed));
  } catch (const Error&) {
    return std::nullopt;
  }
}

GradedEndo compose(const GradedEndo& a, const GradedEndo& b) {
  if (a.ring.var_degrees != b.ring.var_degrees || !(a.ring.group == b.ring.group))
    throw Error(ErrorCode::DimensionMismatch, "endomorphisms act on different graded rings");
  return GradedEndo::general(a.ring, compose(a.map, b.map));
}

bool verify_inverse(const GradedEndo& e, const GradedEndo& e_inv) {
  const PolyMap id = PolyMap::identity(e.ring.num_vars);
  return compose(e.map, e_inv.map) == id && compose(e_inv.map, e.map) == id;
}

PolyMap linear_part(const GradedEndo& e) {
  switch (e.kind) {
    case EndoKind::Linear:
      return e.map;
    case EndoKind::Shear:
    case EndoKind::CoordinateUpdate: {
      PolyMap m = PolyMap::identity(e.ring.num_vars);
      m.images[e.index] += e.increment.homogeneous_part(1);
      return m;
    }
    case EndoKind::General:
      break;
  }
  throw Error(ErrorCode::NotElementary, "map is not elementary");
}

PolyMap compose_sequence(const std::vector<GradedEndo>& seq, std::size_t num_vars) {
  PolyMap total = PolyMap::identity(num_vars);
  for (const GradedEndo& e : seq) total = compose(e.map, total);
  return total;
}

PolyMap rho_replace(const std::vector<GradedEndo>& seq, const std::vector<std::size_t>& frozen) {
  std::vector<GradedEndo> replaced;
  std::size_t n = seq.empty() ? 0 : seq.front().ring.num_vars;
  for (const GradedEndo& e : seq) {
    if (e.kind == EndoKind::General) throw Error(ErrorCode::NotElementary, "map is not elementary");
    if (e.ring.num_vars != n) throw Error(ErrorCode::DimensionMismatch, "steps act on different rings");
    GradedEndo step = e;
    const bool frozen_target = e.kind != EndoKind::Linear &&
                               std::find(frozen.begin(), frozen.end(), e.index) != frozen.end();
    if (frozen_target && !is_linear_form(e.increment)) step.map = linear_part(e);
    replaced.push_back(std::move(step));
  }
  return compose_sequence(replaced, n);
}

PolyMap anick_zeta() {
  const Poly delta = var(4, 0) * var(4, 3) - var(4, 1) * var(4, 2);
  PolyMap z = PolyMap::identity(4);
  z.images[1] += var(4, 0) * delta;
  z.images[3] += var(4, 2) * delta;
  return z;
}

Certificate certify_rho(const PolyMap& rho) {
  if (rho.source_vars() != 4 || rho.target_vars != 4)
    throw Error(ErrorCode::DimensionMismatch, "rho must be an endomorphism of K[y1..y4]");
  const PolyMap z = anick_zeta();
  Certificate c;
  c.rho = rho;
  c.f = z.images[0] - rho.images[0];
  c.g = z.images[1] - rho.images[1];
  c.det_j = poly_det(jacobian(rho));
  c.residual = c.det_j - (Poly::constant(4, 1) - var(4, 0) * var(4, 2));
  c.f_in_i3 = in_ideal_power(c.f, {0, 1}, 3);
  c.g_in_i3 = in_ideal_power(c.g, {0, 1}, 3);
  c.fixes_y3_y4 = rho.images[2] == var(4, 2) && rho.images[3] == var(4, 3);
  c.residual_in_i2 = in_ideal_power(c.residual, {0, 1}, 2);
  c.det_nonconstant = !c.det_j.is_constant();
  return c;
}

WildnessResult wildness_certificate(const std::vector<GradedEndo>& seq) {
  const GradedRing q = quadric_ring();
  for (const GradedEndo& e : seq) {
    if (e.ring.num_vars != 4 || e.ring.var_degrees != q.var_degrees || !(e.ring.group == q.group))
      throw Error(ErrorCode::NotGradingPreserving, "steps must act on the quadric grading");
    if (check_normalizes(e).kind != NormalizeReport::Kind::Preserves)
      throw Error(ErrorCode::NotGradingPreserving, "step does not preserve the grading");
  }
  const PolyMap composed = compose_sequence(seq, 4);
  const PolyMap z = anick_zeta();
  for (std::size_t i = 0; i < 4; ++i)
    if (composed.images[i] != z.images[i]) return NotZeta{i, composed.images[i], z.images[i]};
  return certify_rho(rho_replace(seq, {2, 3}));
}

GradedEndo shear_family(const GradedRing& r, std::size_t i, const Poly& f, const Poly& h, unsigned k) {
  check_index(r, i);
  check_ring(r, h);
  const DegreeResult dh = degree_of(h, r);
  if (dh.kind != DegreeResult::Kind::Homogeneous || *dh.degree != zero_elem(r.group))
    throw Error(ErrorCode::NotHomogeneousShear, "h must be homogeneous of degree 0");
  if (h.involves(i)) throw Error(ErrorCode::DependsOnTarget, "h involves the shifted variable");
  if (f.involves(i)) throw Error(ErrorCode::DependsOnTarget, "f involves the shifted variable");
  return elementary_shear(r, i, f * h.pow(k));
}

PolyMap nagata_map() {
  const Poly y1 = var(3, 0), y2 = var(3, 1), y3 = var(3, 2);
  const Poly delta = y1 * y3 + y2 * y2;
  PolyMap m;
  m.target_vars = 3;
  m.images = {y1 - y2 * delta * Rat(2) - y3 * delta * delta, y2 + y3 * delta, y3};
  return m;
}

std::vector<std::array<long, 3>> nagata_homogeneous_gradings(long bound) {
  const PolyMap m = nagata_map();
  std::vector<std::array<long, 3>> out;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c) {
        const GradedRing r = integer_grading({a, b, c});
        const bool homogeneous = std::all_of(m.images.begin(), m.images.end(), [&](const Poly& p) {
          return degree_of(p, r).kind != DegreeResult::Kind::NotHomogeneous;
        });
        if (homogeneous) out.push_back({a, b, c});
      }
  return out;
}

TameSearchResult bounded_tame_search(std::size_t max_length, unsigned max_degree) {
  const GradedRing q = quadric_ring();
  const std::size_t n = 4;
  // Shapes (changed variable, factor, the two degree-0 products H depends on).
  struct Shape {
    std::size_t target, factor;
    Poly u, v;
  };
  const auto y = [&](std::size_t i) { return var(n, i); };
  const std::vector<Shape> shapes{
      {0, 1, y(1) * y(2), y(1) * y(3)},
      {1, 0, y(0) * y(2), y(0) * y(3)},
      {2, 3, y(0) * y(3), y(1) * y(3)},
      {3, 2, y(0) * y(2), y(1) * y(2)},
  };
  std::vector<GradedEndo> moves;
  for (const Shape& s : shapes)
    for (unsigned total = 0; total <= max_degree; ++total)
      for (unsigned l = 0; l <= total; ++l)
        for (int sign : {1, -1})
          moves.push_back(elementary_shear(q, s.target, y(s.factor) * s.u.pow(l) * s.v.pow(total - l) * Rat(sign)));

  const PolyMap target = anick_zeta();
  TameSearchResult res;
  std::set<std::vector<std::string>> seen;
  std::deque<std::pair<PolyMap, std::vector<std::size_t>>> queue;
  const PolyMap id = PolyMap::identity(n);
  queue.emplace_back(id, std::vector<std::size_t>{});
  seen.insert(to_strings(id, default_var_names(n)));
  while (!queue.empty()) {
    auto [map, path] = std::move(queue.front());
    queue.pop_front();
    ++res.explored;
    if (map == target) {
      res.found = true;
      for (std::size_t k : path) res.sequence.push_back(moves[k]);
      return res;
    }
    if (path.size() == max_length) continue;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      PolyMap next = compose(moves[k].map, map);
      if (!seen.insert(to_strings(next, default_var_names(n))).second) continue;
      auto p = path;
      p.push_back(k);
      queue.emplace_back(std::move(next), std::move(p));
    }
  }
  return res;
}

}  // namespace coxkit
