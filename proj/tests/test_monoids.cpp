#include <algorithm>
#include <random>
#include <set>

#include "coxkit/errors.hpp"
#include "coxkit/monoids.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coxkit;

namespace {

AffineMonoid monoid_469() {
  return AffineMonoid(2, {make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 2})});
}

AffineMonoid monoid_10_14_15_21() {
  return AffineMonoid(4, {make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 1}),
                          make_vector({0, 1, 1, 0}), make_vector({0, 1, 0, 1})});
}

std::set<IntVector> restricted_coordinate_projections(const AffineMonoid& m) {
  std::set<IntVector> out;
  for (std::size_t j = 0; j < m.ambient_rank(); ++j) {
    IntVector e(m.ambient_rank());
    e[j] = 1;
    out.insert(restrict_functional(m, e));
  }
  return out;
}

std::set<IntVector> rows_of(const IntMatrix& m) {
  const auto rows = m.row_vectors();
  return {rows.begin(), rows.end()};
}

// Monoid elements in [0, bound]^n for nonnegative generators, by closing
// {0} under adding generators inside the box.
std::vector<IntVector> brute_elements(const AffineMonoid& m, long bound) {
  std::set<IntVector> seen{IntVector(m.ambient_rank(), Int(0))};
  std::vector<IntVector> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    const IntVector x = todo.back();
    todo.pop_back();
    for (const auto& g : m.generators()) {
      IntVector y = x;
      bool inside = true;
      for (std::size_t c = 0; c < y.size(); ++c) {
        y[c] += g[c];
        inside = inside && y[c] <= bound;
      }
      if (inside && seen.insert(y).second) todo.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

// Truncated divisibility set {a : tau(a) >= d} among `elems`.
std::set<IntVector> divisible_by(const DivisorTheory& dt, const std::vector<IntVector>& elems,
                                 const IntVector& d) {
  std::set<IntVector> out;
  for (const auto& a : elems) {
    const auto img = dt.image(a);
    bool ok = true;
    for (std::size_t c = 0; c < d.size(); ++c) ok = ok && img[c] >= d[c];
    if (ok) out.insert(a);
  }
  return out;
}

std::vector<IntVector> sorted_columns(const std::vector<IntVector>& images) {
  std::vector<IntVector> cols;
  if (images.empty()) return cols;
  for (std::size_t j = 0; j < images.front().size(); ++j) {
    IntVector col;
    for (const auto& img : images) col.push_back(img[j]);
    cols.push_back(col);
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

TEST_CASE("saturation") {
  CHECK(is_saturated(monoid_469()).saturated);
  CHECK(is_saturated(AffineMonoid(2, {make_vector({1, 0}), make_vector({0, 1})})).saturated);

  const AffineMonoid m(2, {make_vector({2, 0}), make_vector({0, 1})});
  const auto rep = is_saturated(m, IntMatrix::identity(2));
  CHECK_FALSE(rep.saturated);
  REQUIRE(rep.witness);
  CHECK(*rep.witness == make_vector({1, 0}));
  // (1,0) twice is a generator, once it is not reachable.
  CHECK(oracle::in_free_monoid_image(m.generators(), make_vector({2, 0})));
  CHECK_FALSE(oracle::in_free_monoid_image(m.generators(), make_vector({1, 0})));
  // In its own group (2Z x Z) the monoid is saturated.
  CHECK(is_saturated(m).saturated);

  const AffineMonoid gap(1, {make_vector({2}), make_vector({3})});
  const auto g = is_saturated(gap);
  CHECK_FALSE(g.saturated);
  CHECK(*g.witness == make_vector({1}));
  CHECK_THROWS_AS(divisor_theory(gap), Error);
}

TEST_CASE("monoid construction rejects bad input") {
  CHECK_THROWS_AS(AffineMonoid(2, {make_vector({0, 0})}), Error);
  CHECK_THROWS_AS(AffineMonoid(2, {make_vector({1, 0}), make_vector({-1, 0})}), Error);
  CHECK_THROWS_AS(AffineMonoid(2, {make_vector({1, 0, 0})}), Error);
}

TEST_CASE("monoid membership") {
  const auto m = monoid_469();
  CHECK(m.contains(make_vector({3, 1})));
  CHECK_FALSE(m.contains(make_vector({1, 0})));
  CHECK_FALSE(m.contains(make_vector({-1, 1})));
  for (const auto& x : oracle::box(2, 0, 6))
    CHECK(m.contains(x) == oracle::in_free_monoid_image(m.generators(), x));
}

TEST_CASE("divisor theory of the 4,6,9 monoid") {
  const auto m = monoid_469();
  const auto dt = divisor_theory(m);
  CHECK(dt.free_rank() == 2);
  CHECK(rows_of(dt.functionals) == restricted_coordinate_projections(m));
  CHECK(dt.generator_images() == std::vector<IntVector>{make_vector({2, 0}), make_vector({1, 1}),
                                                        make_vector({0, 2})});
  const auto rep = verify_divisor_axioms(dt, 6);
  CHECK(rep.passed);
}

TEST_CASE("divisor theory of the 10,14,15,21 monoid") {
  const auto m = monoid_10_14_15_21();
  CHECK(m.rank() == 3);
  const auto dt = divisor_theory(m);
  CHECK(dt.free_rank() == 4);
  CHECK(rows_of(dt.functionals) == restricted_coordinate_projections(m));
  CHECK(dt.generator_images() == m.generators());
  CHECK(verify_divisor_axioms(dt, 6).passed);
}

TEST_CASE("divisor theory of the orthant is the identity") {
  const AffineMonoid m(2, {make_vector({1, 0}), make_vector({0, 1})});
  const auto dt = divisor_theory(m);
  CHECK(dt.functionals == IntMatrix::identity(2));
  CHECK(verify_divisor_axioms(dt, 4).passed);
}

TEST_CASE("axiom (ii) fails for an embedding with a redundant coordinate") {
  const auto m = monoid_469();
  const auto dt = DivisorTheory::from_ambient(m, IntMatrix{{1, 0}, {0, 1}, {1, 1}});
  const auto rep = verify_divisor_axioms(dt, 6);
  REQUIRE_FALSE(rep.passed);
  CHECK(rep.failed_axiom == 2);
  CHECK(*rep.d1 == make_vector({0, 0, 1}));
  CHECK(*rep.d2 == make_vector({0, 0, 2}));
  // Every nonzero element has even third coordinate >= 2.
  const auto elems = brute_elements(m, 8);
  CHECK(divisible_by(dt, elems, *rep.d1) == divisible_by(dt, elems, *rep.d2));
}

TEST_CASE("axiom checks on embeddings that are not divisor theories") {
  const AffineMonoid m(2, {make_vector({1, 0}), make_vector({0, 1})});
  // a -> (2 a1, a2): S((1,0)) = S((2,0)).
  const auto dt = DivisorTheory::from_ambient(m, IntMatrix{{2, 0}, {0, 1}});
  const auto rep = verify_divisor_axioms(dt, 4);
  REQUIRE_FALSE(rep.passed);
  CHECK(rep.failed_axiom == 2);
  CHECK(*rep.d1 == make_vector({1, 0}));
  CHECK(*rep.d2 == make_vector({2, 0}));

  // a -> (a1, a1 + a2): tau(e1) - tau(e2) = (1,0) is not an image.
  const auto dt2 = DivisorTheory::from_ambient(m, IntMatrix{{1, 0}, {1, 1}});
  const auto rep2 = verify_divisor_axioms(dt2, 4);
  REQUIRE_FALSE(rep2.passed);
  CHECK(rep2.failed_axiom == 1);
  const IntVector c1 = *rep2.c1;
  CHECK(dt2.image(*rep2.a) == dt2.image(*rep2.b) + c1);
  CHECK_FALSE(oracle::in_free_monoid_image(dt2.generator_images(), c1));
}

TEST_CASE("extension: condition (*) fails for 10,2,15,3") {
  const auto m = monoid_10_14_15_21();
  const auto dt = divisor_theory(m);
  // exponent vectors of 10, 2, 15, 3 over primes 2, 3, 5, 7
  const auto alpha = MonoidHom::from_generator_images(
      m, {make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 0}), make_vector({0, 1, 1, 0}),
          make_vector({0, 1, 0, 0})});
  const auto res = extend_embedding(dt, alpha, 8);
  REQUIRE(std::holds_alternative<ViolationStar>(res));
  const auto& v = std::get<ViolationStar>(res);
  CHECK(v.a == make_vector({1, 0, 1, 0}));
  CHECK(v.b == make_vector({1, 0, 0, 1}));
  CHECK(v.s == make_vector({0, 0, 1, 0}));
  // Raw definition of (*): a, b in the monoid, alpha(a) = alpha(b) s, s not
  // an alpha-image.
  CHECK(oracle::in_free_monoid_image(m.generators(), v.a));
  CHECK(oracle::in_free_monoid_image(m.generators(), v.b));
  CHECK(alpha.apply(m, v.a) == alpha.apply(m, v.b) + v.s);
  CHECK(is_nonnegative(v.s));
  CHECK_FALSE(oracle::in_free_monoid_image(alpha.generator_images(), v.s));
}

TEST_CASE("extension: condition (**) fails for 20,30,45") {
  const auto m = monoid_469();
  const auto dt = divisor_theory(m);
  // exponent vectors of 20, 30, 45 over primes 2, 3, 5
  const auto alpha = MonoidHom::from_generator_images(
      m, {make_vector({2, 0, 1}), make_vector({1, 1, 1}), make_vector({0, 2, 1})});
  const auto res = extend_embedding(dt, alpha, 8);
  REQUIRE(std::holds_alternative<ViolationStarStar>(res));
  const auto& v = std::get<ViolationStarStar>(res);
  CHECK(v.witness_set == m.generators());
  CHECK(v.common_prime_index == 3);
  // Raw definition of (**): the set is coprime in D, its images share a prime.
  IntVector common = dt.image(v.witness_set.front());
  for (const auto& a : v.witness_set) {
    const auto img = dt.image(a);
    for (std::size_t c = 0; c < common.size(); ++c) common[c] = std::min(common[c], img[c]);
    CHECK(alpha.apply(m, a)[v.common_prime_index - 1] > 0);
  }
  CHECK(is_zero(common));
}

TEST_CASE("extension through the divisor theory itself gives the identity") {
  for (const auto& m : {monoid_469(), monoid_10_14_15_21()}) {
    const auto dt = divisor_theory(m);
    const auto alpha = MonoidHom::from_generator_images(m, dt.generator_images());
    const auto res = extend_embedding(dt, alpha, 8);
    REQUIRE(std::holds_alternative<Beta>(res));
    CHECK(std::get<Beta>(res).matrix == IntMatrix::identity(dt.free_rank()));
  }
}

TEST_CASE("extension detects a non-injective map") {
  const auto m = monoid_10_14_15_21();
  const auto dt = divisor_theory(m);
  const auto alpha = MonoidHom::from_generator_images(
      m, {make_vector({1}), make_vector({1}), make_vector({1}), make_vector({1})});
  const auto res = extend_embedding(dt, alpha, 8);
  REQUIRE(std::holds_alternative<NotAnEmbedding>(res));
  const auto& v = std::get<NotAnEmbedding>(res);
  CHECK(v.a != v.b);
  CHECK(alpha.apply(m, v.a) == alpha.apply(m, v.b));
}

TEST_CASE("generator images must come from a group homomorphism") {
  const auto m = monoid_10_14_15_21();
  // 10 + 21 = 14 + 15 must be respected
  CHECK_THROWS_AS(MonoidHom::from_generator_images(
                      m, {make_vector({1}), make_vector({0}), make_vector({0}), make_vector({0})}),
                  Error);
}

TEST_CASE("divisor axioms hold for random saturated monoids") {
  std::mt19937 rng(1234);
  int cases = 0;
  while (cases < 200) {
    const std::size_t k = 1 + cases % 3;
    std::uniform_int_distribution<int> coord(0, 3);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < k + 1; ++i) {
      IntVector g(k);
      for (auto& x : g) x = coord(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.empty() || rank(gens, k) < k) continue;
    const auto hb = hilbert_basis(Cone::generated_by(k, gens));
    if (hb.size() > 5) continue;
    const AffineMonoid m(k, hb);
    const auto dt = divisor_theory(m);
    const auto rep = verify_divisor_axioms(dt, 6);
    REQUIRE(rep.passed);
    // Axiom (ii) oracle: distinct d of small sum have distinct truncated sets.
    if (cases % 10 == 0) {
      const auto elems = brute_elements(m, 12);
      std::set<std::set<IntVector>> distinct;
      const auto ds = oracle::box(dt.free_rank(), 0, 2);
      for (const auto& d : ds) distinct.insert(divisible_by(dt, elems, d));
      REQUIRE(distinct.size() == ds.size());
    }
    ++cases;
  }
}

TEST_CASE("divisor theory is stable under reordering and unimodular changes") {
  std::mt19937 rng(99);
  int cases = 0;
  while (cases < 200) {
    const std::size_t k = 2 + cases % 2;
    std::uniform_int_distribution<int> coord(0, 3);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < k + 1; ++i) {
      IntVector g(k);
      for (auto& x : g) x = coord(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.empty() || rank(gens, k) < k) continue;
    const auto hb = hilbert_basis(Cone::generated_by(k, gens));
    const auto dt = divisor_theory(AffineMonoid(k, hb));

    auto shuffled = hb;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto dt2 = divisor_theory(AffineMonoid(k, shuffled));
    REQUIRE(dt2.functionals == dt.functionals);

    // Random unimodular change of coordinates: product of elementary moves.
    IntMatrix u = IntMatrix::identity(k);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(k) - 1);
    std::uniform_int_distribution<int> mult(-2, 2);
    for (int step = 0; step < 4; ++step) {
      const int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      IntMatrix e = IntMatrix::identity(k);
      e(i, j) = mult(rng);
      u = e * u;
    }
    std::vector<IntVector> moved;
    for (const auto& g : hb) moved.push_back(u * g);
    const auto dt3 = divisor_theory(AffineMonoid(k, moved));
    REQUIRE(sorted_columns(dt3.generator_images()) == sorted_columns(dt.generator_images()));
    ++cases;
  }
}

TEST_CASE("extension recovers a planted beta") {
  std::mt19937 rng(555);
  const std::vector<AffineMonoid> monoids{monoid_469(), monoid_10_14_15_21(),
                                          AffineMonoid(2, {make_vector({1, 0}), make_vector({1, 1}),
                                                           make_vector({1, 2})})};
  int cases = 0;
  while (cases < 200) {
    const auto& m = monoids[cases % monoids.size()];
    const auto dt = divisor_theory(m);
    const std::size_t r = dt.free_rank();
    // Each target prime belongs to at most one prime of D; every prime of D
    // receives at least one target prime.
    std::uniform_int_distribution<int> extra(0, 2);
    std::uniform_int_distribution<int> expo(1, 3);
    std::vector<std::size_t> owner;
    for (std::size_t j = 0; j < r; ++j) owner.push_back(j);
    for (int e = extra(rng); e > 0; --e)
      owner.push_back(std::uniform_int_distribution<std::size_t>(0, r)(rng));  // r = unused prime
    std::shuffle(owner.begin(), owner.end(), rng);
    IntMatrix beta(owner.size(), r);
    for (std::size_t i = 0; i < owner.size(); ++i)
      if (owner[i] < r) beta(i, owner[i]) = expo(rng);
    std::vector<IntVector> images;
    for (const auto& t : dt.generator_images()) images.push_back(beta * t);
    const auto alpha = MonoidHom::from_generator_images(m, images);
    const auto res = extend_embedding(dt, alpha, 4);
    REQUIRE(std::holds_alternative<Beta>(res));
    REQUIRE(std::get<Beta>(res).matrix == beta);
    ++cases;
  }
}
