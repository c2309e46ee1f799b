#include "coxkit/monoids.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "coxkit/errors.hpp"

namespace coxkit {

namespace {

Int coordinate_sum(const IntVector& v) {
  Int s = 0;
  for (const auto& x : v) s += x;
  return s;
}

IntVector zeros(std::size_t n) { return IntVector(n, Int(0)); }

// Memoized membership in the monoid generated by nonzero nonnegative vectors.
class ImageMembership {
 public:
  explicit ImageMembership(std::vector<IntVector> images) : images_(std::move(images)) {}

  bool contains(const IntVector& t) {
    if (!is_nonnegative(t)) return false;
    if (is_zero(t)) return true;
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    bool found = false;
    for (const auto& g : images_) {
      IntVector rest = t - g;
      if (is_nonnegative(rest) && contains(rest)) {
        found = true;
        break;
      }
    }
    memo_.emplace(t, found);
    return found;
  }

 private:
  std::vector<IntVector> images_;
  std::map<IntVector, bool> memo_;
};

// All vectors in Z^r_{>=0} with the given coordinate sum, in ascending lex
// order.
void vectors_with_sum(std::size_t r, long total, std::vector<IntVector>& out) {
  IntVector cur(r);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
    if (pos + 1 == r) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (long v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (r == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  rec(0, total);
}

}  // namespace

bool in_monoid_image(const std::vector<IntVector>& images, const IntVector& t) {
  for (const auto& g : images)
    if (is_zero(g) || !is_nonnegative(g))
      throw Error(ErrorCode::InvalidArgument, "images must be nonzero and nonnegative");
  ImageMembership mem(images);
  return mem.contains(t);
}

AffineMonoid::AffineMonoid(std::size_t ambient_rank, std::vector<IntVector> generators)
    : ambient_rank_(ambient_rank), generators_(std::move(generators)) {
  if (generators_.empty())
    throw Error(ErrorCode::InvalidArgument, "a monoid needs at least one generator");
  for (const auto& g : generators_) {
    if (g.size() != ambient_rank_)
      throw Error(ErrorCode::DimensionMismatch, "generator has wrong length");
    if (is_zero(g)) throw Error(ErrorCode::InvalidArgument, "zero generator");
  }
  const IntMatrix basis = row_lattice_basis(IntMatrix::from_rows(generators_, ambient_rank_));
  cone_ = Cone::generated_by(ambient_rank_, generators_, basis);
  for (const auto& g : generators_) generator_coords_.push_back(to_lattice_coordinates(cone_, g));
  facets_ = facet_functionals(cone_);
  grading_ = zeros(rank());
  for (const auto& f : facets_) grading_ = grading_ + f;
}

std::optional<IntVector> AffineMonoid::coordinates(const IntVector& x) const {
  if (x.size() != ambient_rank_)
    throw Error(ErrorCode::DimensionMismatch, "vector has wrong length");
  return lattice_coordinates(cone_.lattice(), x);
}

bool AffineMonoid::contains(const IntVector& x) const {
  const auto c = coordinates(x);
  if (!c) return false;
  std::map<IntVector, bool> memo;
  std::function<bool(const IntVector&)> rec = [&](const IntVector& y) -> bool {
    if (is_zero(y)) return true;
    for (const auto& f : facets_)
      if (dot(f, y) < 0) return false;
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    bool found = false;
    for (const auto& g : generator_coords_) {
      if (dot(grading_, y) < dot(grading_, g)) continue;
      if (rec(y - g)) {
        found = true;
        break;
      }
    }
    memo.emplace(y, found);
    return found;
  };
  return rec(*c);
}

SaturationReport is_saturated(const AffineMonoid& m, const std::optional<IntMatrix>& lattice) {
  std::vector<IntVector> hb;
  if (lattice) {
    for (const auto& g : m.generators())
      if (!lattice_coordinates(row_lattice_basis(*lattice), g))
        throw Error(ErrorCode::InvalidArgument, "lattice does not contain the generators");
    hb = hilbert_basis(Cone::generated_by(m.ambient_rank(), m.generators(), lattice));
  } else {
    hb = hilbert_basis(m.cone());
  }
  for (const auto& h : hb)
    if (!m.contains(h)) return {false, h};
  return {};
}

IntVector restrict_functional(const AffineMonoid& m, const IntVector& ambient) {
  if (ambient.size() != m.ambient_rank())
    throw Error(ErrorCode::DimensionMismatch, "functional has wrong length");
  return m.group_basis() * ambient;
}

IntVector DivisorTheory::image(const IntVector& x) const {
  const auto c = monoid.coordinates(x);
  if (!c) throw Error(ErrorCode::InvalidArgument, "element is not in the group of the monoid");
  return functionals * *c;
}

std::vector<IntVector> DivisorTheory::generator_images() const {
  std::vector<IntVector> out;
  for (const auto& g : monoid.generators()) out.push_back(image(g));
  return out;
}

DivisorTheory DivisorTheory::from_functionals(AffineMonoid m, IntMatrix functionals) {
  if (functionals.cols() != m.rank())
    throw Error(ErrorCode::DimensionMismatch, "functionals must act on the group basis");
  if (rank(functionals) != m.rank())
    throw Error(ErrorCode::InvalidArgument, "functionals are not injective on the group");
  DivisorTheory dt{std::move(m), std::move(functionals)};
  for (const auto& img : dt.generator_images())
    if (!is_nonnegative(img))
      throw Error(ErrorCode::InvalidArgument, "a generator has a negative image");
  return dt;
}

DivisorTheory DivisorTheory::from_ambient(AffineMonoid m, const IntMatrix& ambient) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < ambient.rows(); ++i)
    rows.push_back(restrict_functional(m, ambient.row(i)));
  const std::size_t k = m.rank();
  return from_functionals(std::move(m), IntMatrix::from_rows(rows, k));
}

DivisorTheory divisor_theory(const AffineMonoid& m) {
  const auto sat = is_saturated(m);
  if (!sat.saturated)
    throw Error(ErrorCode::NotSaturated,
                "monoid is not saturated; witness " + to_string(*sat.witness));
  // Functionals that restrict a coordinate projection come first, in
  // coordinate order; the others follow lexicographically.
  auto facets = facet_functionals(m.cone());
  auto key = [&](const IntVector& f) {
    std::size_t j = 0;
    while (j < m.ambient_rank()) {
      IntVector e(m.ambient_rank());
      e[j] = 1;
      if (restrict_functional(m, e) == f) break;
      ++j;
    }
    return std::make_pair(j, f);
  };
  std::sort(facets.begin(), facets.end(),
            [&](const IntVector& x, const IntVector& y) { return key(x) < key(y); });
  return DivisorTheory::from_functionals(m, IntMatrix::from_rows(facets, m.rank()));
}

MonoidHom MonoidHom::from_generator_images(const AffineMonoid& m,
                                           std::vector<IntVector> images) {
  const auto& gens = m.generators();
  if (images.size() != gens.size())
    throw Error(ErrorCode::DimensionMismatch, "one image per generator is required");
  const std::size_t k = images.front().size();
  for (const auto& img : images) {
    if (img.size() != k) throw Error(ErrorCode::DimensionMismatch, "images differ in length");
    if (!is_nonnegative(img))
      throw Error(ErrorCode::InvalidArgument, "images must be nonnegative");
  }
  std::vector<IntVector> coords;
  for (const auto& g : gens) coords.push_back(*m.coordinates(g));
  const IntMatrix c = IntMatrix::from_rows(coords, m.rank());
  const IntMatrix a = IntMatrix::from_rows(images, k);
  // The generator coordinates span Z^rank, so the top of their HNF is the
  // identity and U expresses each basis vector through the generators.
  const auto h = hnf(c);
  IntMatrix on_basis(m.rank(), k);
  for (std::size_t i = 0; i < m.rank(); ++i) on_basis.set_row(i, row_times(h.u.row(i), a));
  if (!(c * on_basis == a))
    throw Error(ErrorCode::InvalidArgument,
                "generator images are not induced by a homomorphism of the group");
  MonoidHom out;
  out.images_ = std::move(images);
  out.on_basis_ = on_basis;
  return out;
}

MonoidHom MonoidHom::from_matrix(const AffineMonoid& m, const IntMatrix& matrix) {
  if (matrix.cols() != m.ambient_rank())
    throw Error(ErrorCode::DimensionMismatch, "matrix must act on the ambient lattice");
  std::vector<IntVector> images;
  for (const auto& g : m.generators()) images.push_back(matrix * g);
  return from_generator_images(m, std::move(images));
}

IntVector MonoidHom::apply(const AffineMonoid& m, const IntVector& x) const {
  const auto c = m.coordinates(x);
  if (!c) throw Error(ErrorCode::InvalidArgument, "element is not in the group of the monoid");
  return row_times(*c, on_basis_);
}

std::vector<IntVector> element_window(const DivisorTheory& dt, std::size_t depth) {
  const auto& gens = dt.monoid.generators();
  const auto images = dt.generator_images();
  const Int bound = static_cast<unsigned long>(depth);
  std::vector<IntVector> out{zeros(dt.monoid.ambient_rank())};
  std::vector<IntVector> out_images{zeros(dt.free_rank())};
  std::set<IntVector> seen{out.front()};
  std::size_t begin = 0;
  while (begin < out.size()) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        IntVector img = out_images[i] + images[g];
        if (coordinate_sum(img) > bound) continue;
        IntVector y = out[i] + gens[g];
        if (!seen.insert(y).second) continue;
        out.push_back(std::move(y));
        out_images.push_back(std::move(img));
      }
    begin = end;
  }
  return out;
}

AxiomReport verify_divisor_axioms(const DivisorTheory& dt, std::size_t depth) {
  const auto images = dt.generator_images();
  const std::size_t r = dt.free_rank();

  // Axiom (i).
  const auto window = element_window(dt, depth);
  std::vector<IntVector> window_images;
  for (const auto& x : window) window_images.push_back(dt.image(x));
  ImageMembership member(images);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = 0; j < window.size(); ++j) {
      IntVector c1 = window_images[i] - window_images[j];
      if (!is_nonnegative(c1) || member.contains(c1)) continue;
      AxiomReport rep;
      rep.passed = false;
      rep.failed_axiom = 1;
      rep.a = window[i];
      rep.b = window[j];
      rep.c1 = c1;
      return rep;
    }

  // Axiom (ii). For d in D let S(d) be the monoid elements whose image is
  // >= d. S(d) = S(d + e_j) exactly when no element of S(d) has j-th
  // coordinate d_j, and distinct d1 <= d2 with S(d1) = S(d2) always produce
  // such a pair. An element of S(d) splits as a word in the generators with
  // positive j-th image plus an arbitrary part in the others; the latter
  // can be scaled to cover every coordinate it touches.
  const Int bound = static_cast<unsigned long>(depth);
  std::vector<std::vector<IntVector>> reach(r);
  std::vector<std::vector<bool>> covered(r, std::vector<bool>(r, false));
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<IntVector> touching;
    for (const auto& img : images) {
      if (img[j] > 0) {
        touching.push_back(img);
      } else {
        for (std::size_t k = 0; k < r; ++k)
          if (img[k] > 0) covered[j][k] = true;
      }
    }
    std::set<IntVector> seen{zeros(r)};
    std::vector<IntVector> frontier{zeros(r)};
    while (!frontier.empty()) {
      std::vector<IntVector> next;
      for (const auto& v : frontier)
        for (const auto& t : touching) {
          IntVector w = v + t;
          if (w[j] > bound) continue;
          if (seen.insert(w).second) next.push_back(std::move(w));
        }
      frontier = std::move(next);
    }
    reach[j].assign(seen.begin(), seen.end());
  }
  for (std::size_t total = 0; total <= depth; ++total) {
    std::vector<IntVector> ds;
    vectors_with_sum(r, static_cast<long>(total), ds);
    for (const auto& d : ds)
      for (std::size_t j = 0; j < r; ++j) {
        const bool attained = std::any_of(reach[j].begin(), reach[j].end(), [&](const IntVector& v) {
          if (v[j] != d[j]) return false;
          for (std::size_t k = 0; k < r; ++k)
            if (k != j && v[k] < d[k] && !covered[j][k]) return false;
          return true;
        });
        if (attained) continue;
        AxiomReport rep;
        rep.passed = false;
        rep.failed_axiom = 2;
        rep.d1 = d;
        IntVector d2 = d;
        d2[j] += 1;
        rep.d2 = d2;
        return rep;
      }
  }
  return {};
}

ExtensionResult extend_embedding(const DivisorTheory& dt, const MonoidHom& alpha,
                                 std::size_t depth) {
  const AffineMonoid& m = dt.monoid;
  const auto& gens = m.generators();
  const auto tau = dt.generator_images();
  const auto& a_img = alpha.generator_images();
  if (a_img.size() != gens.size())
    throw Error(ErrorCode::DimensionMismatch, "alpha does not match the monoid");
  const std::size_t k = alpha.target_rank();
  const std::size_t r = dt.free_rank();

  for (const auto& g : gens)
    if (is_zero(alpha.apply(m, g))) return NotAnEmbedding{g, zeros(m.ambient_rank())};

  const auto window = element_window(dt, depth);
  std::vector<IntVector> images;
  std::map<IntVector, std::size_t> first;
  for (std::size_t i = 0; i < window.size(); ++i) {
    images.push_back(alpha.apply(m, window[i]));
    auto [it, fresh] = first.emplace(images.back(), i);
    if (!fresh) return NotAnEmbedding{window[it->second], window[i]};
  }

  // (*)
  ImageMembership member(a_img);
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = 0; j < window.size(); ++j) {
      IntVector s = images[i] - images[j];
      if (is_nonnegative(s) && !member.contains(s)) return ViolationStar{window[i], window[j], s};
    }

  // (**): the elements whose image is divisible by the i-th prime form a
  // coprime set in D iff the generators among them do.
  std::vector<std::vector<std::size_t>> support(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (a_img[g][i] > 0) support[i].push_back(g);
    if (support[i].empty()) continue;
    IntVector common = tau[support[i].front()];
    for (auto g : support[i])
      for (std::size_t c = 0; c < r; ++c) common[c] = std::min(common[c], tau[g][c]);
    if (is_zero(common)) {
      ViolationStarStar v;
      for (auto g : support[i]) v.witness_set.push_back(gens[g]);
      v.common_prime_index = i + 1;
      return v;
    }
  }

  // beta(q_j) = product of p_i^{r_i} over primes p_i with N(p_i) = L(q_j).
  IntMatrix beta(k, r);
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::size_t> lq;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (tau[g][j] > 0) lq.push_back(g);
    for (std::size_t i = 0; i < k; ++i) {
      if (support[i] != lq || lq.empty()) continue;
      Int exponent = a_img[lq.front()][i];
      for (auto g : lq) exponent = std::min(exponent, a_img[g][i]);
      beta(i, j) = exponent;
    }
  }
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!(beta * tau[g] == a_img[g]))
      throw Error(ErrorCode::DepthInsufficient,
                  "no violation found within depth but beta does not factor alpha on generator " +
                      to_string(gens[g]));
  return Beta{beta};
}

}  // namespace coxkit
