#include <random>
#include <set>

#include "coxkit/errors.hpp"
#include "coxkit/exactgeom.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coxkit;

namespace {

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

bool is_row_hnf(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (r > 0 && c <= last_pivot) return false;
    if (h(r, c) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    last_pivot = c;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf of a matrix already in normal form is unchanged") {
  const IntMatrix a{{2, 0}, {0, 3}};
  const auto r = hnf(a);
  CHECK(r.h == a);
  CHECK(r.u == IntMatrix::identity(2));
}

TEST_CASE("hnf of [[1,2],[3,4]]") {
  const IntMatrix a{{1, 2}, {3, 4}};
  const auto r = hnf(a);
  CHECK(r.h(0, 0) == 1);
  CHECK(r.u * a == r.h);
  CHECK(abs(oracle::cofactor_det(r.u)) == 1);
  // Row HNF of a full-rank matrix is unique.
  CHECK(r.h == IntMatrix{{1, 0}, {0, 2}});
}

TEST_CASE("hnf of the zero matrix") {
  const IntMatrix z(2, 3);
  const auto r = hnf(z);
  CHECK(r.h.is_zero());
  CHECK(r.u == IntMatrix::identity(2));
}

TEST_CASE("snf examples") {
  {
    const IntMatrix a{{2, 0}, {0, 3}};
    const auto r = snf(a);
    CHECK(r.s == IntMatrix{{1, 0}, {0, 6}});
    CHECK(r.u * a * r.v == r.s);
    CHECK(abs(oracle::cofactor_det(r.u)) == 1);
    CHECK(abs(oracle::cofactor_det(r.v)) == 1);
  }
  {
    const auto r = snf(IntMatrix::identity(3));
    CHECK(r.s == IntMatrix::identity(3));
    CHECK(r.u == IntMatrix::identity(3));
    CHECK(r.v == IntMatrix::identity(3));
  }
  CHECK(snf(IntMatrix{{2}}).s == IntMatrix{{2}});
}

TEST_CASE("hnf and snf defining identities on random matrices") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> shape(1, 5);
  int cases = 0;
  for (int t = 0; t < 250; ++t) {
    const auto a = oracle::random_matrix(rng, shape(rng), shape(rng), -9, 9);
    const auto h = hnf(a);
    REQUIRE(h.u * a == h.h);
    REQUIRE(abs(oracle::cofactor_det(h.u)) == 1);
    REQUIRE(is_row_hnf(h.h));

    const auto s = snf(a);
    REQUIRE(s.u * a * s.v == s.s);
    REQUIRE(abs(oracle::cofactor_det(s.u)) == 1);
    REQUIRE(abs(oracle::cofactor_det(s.v)) == 1);
    Int prev = 1;
    for (std::size_t i = 0; i < s.s.rows(); ++i)
      for (std::size_t j = 0; j < s.s.cols(); ++j) {
        if (i != j) REQUIRE(s.s(i, j) == 0);
      }
    for (std::size_t i = 0; i < std::min(s.s.rows(), s.s.cols()); ++i) {
      const Int d = s.s(i, i);
      REQUIRE(d >= 0);
      if (prev == 0) REQUIRE(d == 0);
      else if (d != 0) REQUIRE(d % prev == 0);
      prev = d;
    }
    ++cases;
  }
  CHECK(cases >= 200);
}

TEST_CASE("lattice helpers") {
  const IntMatrix basis{{1, 1}, {0, 2}};
  CHECK(lattice_coordinates(basis, make_vector({2, 0})).has_value());
  CHECK_FALSE(lattice_coordinates(basis, make_vector({1, 0})).has_value());
  const auto c = *lattice_coordinates(basis, make_vector({3, 5}));
  CHECK(row_times(c, basis) == make_vector({3, 5}));
  const IntMatrix k = left_kernel(IntMatrix{{1, 2}, {2, 4}});
  REQUIRE(k.rows() == 1);
  CHECK(is_zero(row_times(k.row(0), IntMatrix{{1, 2}, {2, 4}})));
  CHECK(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
}

TEST_CASE("dual cone of the orthant is self-dual") {
  const auto d = dual_cone(Cone::orthant(2));
  CHECK(d.rays() == std::vector<IntVector>{make_vector({0, 1}), make_vector({1, 0})});
}

TEST_CASE("dual cone of rays (1,0),(1,2)") {
  const std::vector<IntVector> rays{make_vector({1, 0}), make_vector({1, 2})};
  const auto expected = oracle::subset_dual_rays(rays, 2);
  CHECK(as_set(expected) == as_set({make_vector({0, 1}), make_vector({2, -1})}));
  const auto d = dual_cone(Cone::generated_by(2, rays));
  CHECK(as_set(d.rays()) == as_set(expected));
}

TEST_CASE("dual cone of the cone over the unit square") {
  const std::vector<IntVector> rays{make_vector({0, 0, 1}), make_vector({1, 0, 1}),
                                    make_vector({0, 1, 1}), make_vector({1, 1, 1})};
  const Cone c = Cone::generated_by(3, rays);
  const auto d = dual_cone(c);
  CHECK(as_set(d.rays()) == as_set(oracle::subset_dual_rays(rays, 3)));
  REQUIRE(d.rays().size() == 4);
  for (const auto& f : d.rays()) {
    int zeros = 0;
    for (const auto& r : rays) {
      CHECK(dot(f, r) >= 0);
      if (dot(f, r) == 0) ++zeros;
    }
    CHECK(zeros == 2);
  }
  CHECK(as_set(dual_cone(d).rays()) == as_set(c.rays()));
}

TEST_CASE("non-pointed input is rejected") {
  CHECK_THROWS_AS(Cone::generated_by(2, {make_vector({1, 0}), make_vector({-1, 0}),
                                         make_vector({0, 1})}),
                  Error);
  try {
    Cone::generated_by(1, {make_vector({1}), make_vector({-2})});
    FAIL("expected NonPointed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPointed);
  }
}

TEST_CASE("redundant generators are dropped and rays made primitive") {
  const Cone c = Cone::generated_by(
      2, {make_vector({2, 0}), make_vector({1, 1}), make_vector({3, 6})});
  CHECK(c.rays() == std::vector<IntVector>{make_vector({1, 0}), make_vector({1, 2})});
}

TEST_CASE("hilbert basis examples") {
  CHECK(hilbert_basis(Cone::orthant(2)) ==
        std::vector<IntVector>{make_vector({0, 1}), make_vector({1, 0})});

  const std::vector<IntVector> rays{make_vector({1, 0}), make_vector({1, 2})};
  const auto expected = oracle::brute_hilbert_orthant(rays, 2, 10);
  CHECK(expected ==
        std::vector<IntVector>{make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})});
  CHECK(hilbert_basis(Cone::generated_by(2, rays)) == expected);

  // L = {(a,b) : a + b even}; (2,0) and (0,2) are primitive in L.
  const Cone even = Cone::generated_by(2, {make_vector({2, 0}), make_vector({0, 2})},
                                       IntMatrix{{1, 1}, {2, 0}});
  CHECK(even.rays() == std::vector<IntVector>{make_vector({0, 2}), make_vector({2, 0})});
  CHECK(hilbert_basis(even) ==
        std::vector<IntVector>{make_vector({0, 2}), make_vector({1, 1}), make_vector({2, 0})});
}

TEST_CASE("lower-dimensional cones restrict to their saturated span") {
  const Cone c = Cone::generated_by(3, {make_vector({1, 0, 0}), make_vector({1, 2, 0})});
  CHECK(c.dimension() == 2);
  CHECK_FALSE(c.is_full_dimensional());
  CHECK(hilbert_basis(c) == std::vector<IntVector>{make_vector({1, 0, 0}),
                                                   make_vector({1, 1, 0}),
                                                   make_vector({1, 2, 0})});
  CHECK(cone_contains(c, make_vector({1, 1, 0})));
  CHECK_FALSE(cone_contains(c, make_vector({1, 1, 1})));
  CHECK_THROWS_AS(dual_cone(c), Error);
}

TEST_CASE("cone membership") {
  CHECK(cone_contains(Cone::orthant(2), make_vector({3, 5})));
  CHECK_FALSE(cone_contains(Cone::orthant(2), make_vector({-1, 0})));
  const Cone c = Cone::generated_by(2, {make_vector({1, 0}), make_vector({1, 2})});
  CHECK(cone_contains(c, make_vector({1, 1})));
  CHECK_FALSE(cone_contains(c, make_vector({0, 1})));
}

TEST_CASE("double description agrees with subset enumeration on random cones") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> height(1, 3);
  std::uniform_int_distribution<int> count(3, 7);
  int cases = 0;
  while (cases < 200) {
    std::vector<IntVector> gens;
    const int m = count(rng);
    for (int i = 0; i < m; ++i)
      gens.push_back(make_vector({coord(rng), coord(rng), height(rng)}));
    if (rank(gens, 3) < 3) continue;
    const Cone c = Cone::generated_by(3, gens);
    const auto d = dual_cone(c);
    REQUIRE(as_set(d.rays()) == as_set(oracle::subset_dual_rays(c.rays(), 3)));
    for (const auto& f : d.rays()) {
      std::vector<IntVector> on_facet;
      for (const auto& r : c.rays()) {
        REQUIRE(dot(f, r) >= 0);
        if (dot(f, r) == 0) on_facet.push_back(r);
      }
      REQUIRE(rank(on_facet, 3) == 2);
    }
    REQUIRE(as_set(dual_cone(d).rays()) == as_set(c.rays()));
    ++cases;
  }
}

TEST_CASE("hilbert basis is minimal and generating against brute force") {
  std::mt19937 rng(4242);
  int cases = 0;
  while (cases < 220) {
    const std::size_t k = (cases % 2 == 0) ? 2 : 3;
    const int hi = (k == 2) ? 5 : 3;
    std::uniform_int_distribution<int> coord(0, hi);
    std::uniform_int_distribution<int> count{static_cast<int>(k), static_cast<int>(k) + 2};
    std::vector<IntVector> gens;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
      IntVector g(k);
      for (auto& x : g) x = coord(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.size() < k || rank(gens, k) < k) continue;
    // Rays of [0,hi]^k boxes keep every Hilbert basis element inside [0,10]^k.
    const Cone c = Cone::generated_by(k, gens);
    const auto hb = hilbert_basis(c);
    REQUIRE(hb == oracle::brute_hilbert_orthant(c.rays(), k, 10));
    ++cases;
  }
}
