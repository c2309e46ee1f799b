// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "coxkit/finite_quotient.hpp"
#include "coxkit/grading.hpp"
#include "coxkit/monoids.hpp"
#include "coxkit/toric_cox.hpp"
#include "oracles.hpp"

using namespace coxkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

const std::vector<std::string> Y4 = default_var_names(4);
const std::vector<std::string> X4 = default_var_names(4, "x");

AffineMonoid monoid_469() { return AffineMonoid(2, {make_vector({2, 0}), make_vector({1, 1}), make_vector({0, 2})}); }

AffineMonoid monoid_10_14_15_21() {
  return AffineMonoid(4, {make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 1}), make_vector({0, 1, 1, 0}),
                          make_vector({0, 1, 0, 1})});
}

// Functionals equal to the coordinate projections restricted to the group.
bool coordinate_functionals(const DivisorTheory& dt) {
  const AffineMonoid& m = dt.monoid;
  if (dt.free_rank() != m.ambient_rank()) return false;
  for (std::size_t j = 0; j < m.ambient_rank(); ++j) {
    IntVector e(m.ambient_rank(), 0);
    e[j] = 1;
    if (dt.functionals.row(j) != restrict_functional(m, e)) return false;
  }
  return true;
}

PolyMap tau() {
  return parse_map({"x1", "x2+x1*(x3-x2)", "x3+x1*(x3-x2)", "x4+(x3+x2)*(x3-x2)+x1*(x3-x2)^2"}, X4);
}

PolyMap tau_inv() {
  return parse_map({"x1", "x2-x1*(x3-x2)", "x3-x1*(x3-x2)", "x4-(x3+x2)*(x3-x2)+x1*(x3-x2)^2"}, X4);
}

PolyMap zeta() { return parse_map({"y1", "y2 + y1*(y1*y4 - y2*y3)", "y3", "y4 + y3*(y1*y4 - y2*y3)"}, Y4); }

Outcome criterion1() {
  Outcome o;
  const DivisorTheory dt = divisor_theory(monoid_469());
  o.require(dt.free_rank() == 2, "rank is " + std::to_string(dt.free_rank()));
  o.require(coordinate_functionals(dt), "functionals are not the coordinate ones");
  o.require(dt.generator_images() == std::vector<IntVector>{make_vector({2, 0}), make_vector({1, 1}),
                                                          make_vector({0, 2})},
            "generator images differ");
  o.require(verify_divisor_axioms(dt, 6).passed, "axioms fail at depth 6");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const DivisorTheory dt = divisor_theory(monoid_10_14_15_21());
  o.require(dt.free_rank() == 4, "rank is " + std::to_string(dt.free_rank()));
  o.require(coordinate_functionals(dt), "functionals are not the coordinate ones");
  return o;
}

Outcome criterion3() {
  Outcome o;
  {
    const AffineMonoid m = monoid_10_14_15_21();
    const DivisorTheory dt = divisor_theory(m);
    const MonoidHom alpha = MonoidHom::from_generator_images(
        m, {make_vector({1, 0, 1, 0}), make_vector({1, 0, 0, 0}), make_vector({0, 1, 1, 0}),
            make_vector({0, 1, 0, 0})});
    const ExtensionResult r = extend_embedding(dt, alpha, 8);
    const auto* v = std::get_if<ViolationStar>(&r);
    o.require(v != nullptr, "first map: no ViolationStar");
    if (v) {
      // a, b in the monoid, alpha(a) = alpha(b) + s, s not in the image monoid
      o.require(oracle::in_free_monoid_image(m.generators(), v->a), "a not in the monoid");
      o.require(oracle::in_free_monoid_image(m.generators(), v->b), "b not in the monoid");
      o.require(alpha.apply(m, v->a) == alpha.apply(m, v->b) + v->s, "alpha(a) != alpha(b) + s");
      o.require(is_nonnegative(v->s) && !oracle::in_free_monoid_image(alpha.generator_images(), v->s),
                "s lies in the image");
    }
  }
  {
    const AffineMonoid m = monoid_469();
    const DivisorTheory dt = divisor_theory(m);
    const MonoidHom alpha = MonoidHom::from_generator_images(
        m, {make_vector({2, 0, 1}), make_vector({1, 1, 1}), make_vector({0, 2, 1})});
    const ExtensionResult r = extend_embedding(dt, alpha, 8);
    const auto* v = std::get_if<ViolationStarStar>(&r);
    o.require(v != nullptr, "second map: no ViolationStarStar");
    if (v) {
      // coprime in the free monoid, while all images share a prime
      o.require(!v->witness_set.empty(), "empty witness set");
      IntVector common = dt.image(v->witness_set.front());
      for (const IntVector& a : v->witness_set) {
        o.require(oracle::in_free_monoid_image(m.generators(), a), "witness not in the monoid");
        const IntVector img = dt.image(a);
        for (std::size_t c = 0; c < common.size(); ++c) common[c] = std::min(common[c], img[c]);
        o.require(v->common_prime_index >= 1 && alpha.apply(m, a)[v->common_prime_index - 1] > 0,
                  "image not divisible by the common prime");
      }
      o.require(is_zero(common), "witness set is not coprime");
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const AffineMonoid& m : {monoid_469(), monoid_10_14_15_21()}) {
    const DivisorTheory dt = divisor_theory(m);
    const ExtensionResult r =
        extend_embedding(dt, MonoidHom::from_generator_images(m, dt.generator_images()), 8);
    const auto* b = std::get_if<Beta>(&r);
    o.require(b && b->matrix == IntMatrix::identity(dt.free_rank()), "beta is not the identity");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const CoxData q = quadric_cox_data();
  o.require(verify_lift(q, tau(), GradedEndo::general(cox_ring(q), zeta())), "zeta does not lift tau");
  const PolyMap a = compose(tau(), tau_inv()), b = compose(tau_inv(), tau());
  for (std::size_t i = 0; i < 4; ++i) {
    o.require(a.images[i] == Poly::variable(4, i), "tau after tau_inv moves x" + std::to_string(i + 1));
    o.require(b.images[i] == Poly::variable(4, i), "tau_inv after tau moves x" + std::to_string(i + 1));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto y5 = default_var_names(5);
  const std::vector<std::vector<std::string>> steps{
      {"y1", "y2", "y3", "y4", "y5 + y1*y4 - y2*y3"}, {"y1", "y2 + y1*y5", "y3", "y4", "y5"},
      {"y1", "y2", "y3", "y4 + y3*y5", "y5"},         {"y1", "y2", "y3", "y4", "y5 - (y1*y4 - y2*y3)"},
      {"y1", "y2 - y1*y5", "y3", "y4", "y5"},         {"y1", "y2", "y3", "y4 - y3*y5", "y5"},
  };
  PolyMap total = PolyMap::identity(5);
  for (const auto& s : steps) total = compose(parse_map(s, y5), total);
  const PolyMap expected =
      parse_map({"y1", "y2 + y1*(y1*y4 - y2*y3)", "y3", "y4 + y3*(y1*y4 - y2*y3)", "y5"}, y5);
  o.require(total == expected, "composite is " + [&] {
    std::string s;
    for (const auto& t : to_strings(total, y5)) s += t + "; ";
    return s;
  }());
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Certificate c = certify_rho(parse_map({"y1", "y2 + y1*(y1*y4 - y2*y3)", "y3", "y4"}, Y4));
  o.require(c.det_j == parse_poly("1 - y1*y3", Y4), "det J(rho0) = " + to_string(c.det_j, Y4));
  o.require(c.residual_in_i2 && in_ideal_power(c.residual, {0, 1}, 2), "residual outside I^2");
  o.require(c.f.is_zero() && c.g.is_zero(), "f or g nonzero");
  o.require(c.f_in_i3 && c.g_in_i3, "f or g outside I^3");
  o.require(poly_det(jacobian(zeta())) == Poly::constant(4, 1), "det J(zeta) != 1");
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::set<std::array<long, 3>> expected;
  for (long b = -4; b <= 4; ++b)
    if (std::abs(2 * b) <= 4) expected.insert({2 * b, b, -b});
  const auto scan = nagata_homogeneous_gradings(4);
  const std::set<std::array<long, 3>> found(scan.begin(), scan.end());
  if (found != expected) {
    std::string s;
    for (const auto& g : found)
      s += "(" + std::to_string(g[0]) + "," + std::to_string(g[1]) + "," + std::to_string(g[2]) + ") ";
    o.require(false, "homogeneous gradings found: " + s + "; expected the line a = 2b, c = -b");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const CoxData q = quadric_cox_data();
  o.require(q.cl_group.free_rank == 1 && q.cl_group.torsion.empty(), "class group is not Z");
  std::vector<GroupElem> want;
  for (long d : {1, 1, -1, -1}) want.push_back(make_elem(q.cl_group, make_vector({d})));
  o.require(q.var_degrees == want, "degrees are not (1,1,-1,-1)");
  std::vector<std::string> pulled;
  for (const IntVector& u : q.characters) pulled.push_back(to_string(pullback(q, u), Y4));
  o.require(pulled == std::vector<std::string>{"y1*y3", "y1*y4", "y2*y3", "y2*y4"}, "character pullbacks differ");
  return o;
}

CycloMatrix cdiag(const std::vector<CycloNum>& d) {
  CycloMatrix m(d.size(), std::vector<CycloNum>(d.size(), CycloNum(d[0].conductor())));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

Outcome criterion10() {
  Outcome o;
  const CycloNum z0(4), one(4, 1), i = CycloNum::root(4, 1);
  const MatGroup q8 = close_group(2, 4, {cdiag({i, -i}), {{z0, one}, {-one, z0}}});
  const QuotientReport r = quotient_report(q8);
  o.require(r.order_g == 8, "|G| != 8");
  o.require(r.order_h == 1, "|H| = " + std::to_string(r.order_h));
  o.require(r.order_htilde == 2, "|H~| = " + std::to_string(r.order_htilde));
  o.require(!r.f_abelian, "F abelian");
  o.require(r.n_invariants == std::vector<Int>{2, 2}, "N invariants differ");
  o.require(!r.is_toric, "reported toric");
  const MatGroup pm = close_group(2, 1, {cdiag({CycloNum(1, -1), CycloNum(1, -1)})});
  o.require(reynolds_invariants(pm, 2).size() == 3, "degree-2 invariants of +-E are not 3-dimensional");
  return o;
}

Outcome criterion11() {
  Outcome o;
  const GradedRing q = quadric_ring();
  const Poly probe = parse_poly("y1*y3", Y4);
  int last = 0;
  for (unsigned k = 1; k <= 6; ++k) {
    const GradedEndo e = shear_family(q, 0, parse_poly("y2", Y4), parse_poly("y2*y3", Y4), k);
    o.require(check_normalizes(e).kind == NormalizeReport::Kind::Preserves, "member does not preserve the grading");
    const int d = substitute(probe, e.map).total_degree();
    o.require(d == static_cast<int>(2 * (k + 1)), "k = " + std::to_string(k) + " gives degree " + std::to_string(d));
    o.require(d > last, "degrees not strictly increasing");
    last = d;
  }
  return o;
}

// ---- property suites

bool is_row_hnf(const IntMatrix& h) {
  std::size_t lead = 0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      for (std::size_t r2 = r; r2 < h.rows(); ++r2)
        for (std::size_t j = 0; j < h.cols(); ++j)
          if (h(r2, j) != 0) return false;
      return true;
    }
    if ((r > 0 && c < lead) || h(r, c) <= 0) return false;
    for (std::size_t r2 = 0; r2 < r; ++r2)
      if (h(r2, c) < 0 || h(r2, c) >= h(r, c)) return false;
    lead = c + 1;
  }
  return true;
}

int suite_normal_forms(Outcome& o) {
  std::mt19937 rng(7001);
  std::uniform_int_distribution<int> shape(1, 5);
  int cases = 0;
  for (; cases < 220; ++cases) {
    const IntMatrix a = oracle::random_matrix(rng, shape(rng), shape(rng), -9, 9);
    const HnfResult h = hnf(a);
    o.require(h.u * a == h.h && abs(oracle::cofactor_det(h.u)) == 1 && is_row_hnf(h.h), "HNF identity fails");
    const SnfResult s = snf(a);
    o.require(s.u * a * s.v == s.s, "U A V != S");
    o.require(abs(oracle::cofactor_det(s.u)) == 1 && abs(oracle::cofactor_det(s.v)) == 1, "SNF transforms not unimodular");
    Int prev = 1;
    for (std::size_t i = 0; i < s.s.rows(); ++i)
      for (std::size_t j = 0; j < s.s.cols(); ++j)
        if (i != j) o.require(s.s(i, j) == 0, "SNF not diagonal");
    for (std::size_t i = 0; i < std::min(s.s.rows(), s.s.cols()); ++i) {
      const Int d = s.s(i, i);
      o.require(d >= 0 && (prev == 0 ? d == 0 : d == 0 || d % prev == 0), "SNF divisibility chain fails");
      prev = d;
    }
  }
  return cases;
}

int suite_hilbert(Outcome& o) {
  std::mt19937 rng(7002);
  int cases = 0;
  while (cases < 210) {
    const std::size_t k = cases % 2 == 0 ? 2 : 3;
    const int hi = k == 2 ? 5 : 3;
    std::uniform_int_distribution<int> coord(0, hi);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < k + 1; ++i) {
      IntVector g(k);
      for (auto& x : g) x = coord(rng);
      if (!is_zero(g)) gens.push_back(g);
    }
    if (gens.size() < k || rank(gens, k) < k) continue;
    const Cone c = Cone::generated_by(k, gens);
    o.require(hilbert_basis(c) == oracle::brute_hilbert_orthant(c.rays(), k, 10), "Hilbert basis differs from brute force");
    ++cases;
  }
  return cases;
}

int suite_divisor_axioms(Outcome& o) {
  std::mt19937 rng(7003);
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
    o.require(verify_divisor_axioms(divisor_theory(m), 6).passed, "axioms fail on a saturated monoid");
    ++cases;
  }
  return cases;
}

int suite_substitution(Outcome& o) {
  std::mt19937 rng(7004);
  std::uniform_int_distribution<std::size_t> nv(1, 4);
  int cases = 0;
  for (; cases < 220; ++cases) {
    const std::size_t n = nv(rng);
    const Poly p = oracle::random_poly(rng, n, 4, 4), q = oracle::random_poly(rng, n, 4, 4);
    PolyMap m;
    m.target_vars = n;
    for (std::size_t i = 0; i < n; ++i) m.images.push_back(oracle::random_poly(rng, n, 2, 3));
    o.require(substitute(p + q, m) == substitute(p, m) + substitute(q, m), "substitution not additive");
    o.require(substitute(p * q, m) == substitute(p, m) * substitute(q, m), "substitution not multiplicative");
  }
  return cases;
}

int suite_chain_rule(Outcome& o) {
  std::mt19937 rng(7005);
  std::uniform_int_distribution<std::size_t> nv(1, 3);
  int cases = 0;
  for (; cases < 200; ++cases) {
    const std::size_t n = nv(rng);
    const PolyMap f = oracle::random_map(rng, n, 2), g = oracle::random_map(rng, n, 2);
    o.require(poly_det(jacobian(compose(f, g))) == substitute(poly_det(jacobian(f)), g) * poly_det(jacobian(g)),
              "Jacobian chain rule fails");
  }
  return cases;
}

Outcome criterion12() {
  Outcome o;
  std::ostringstream counts;
  const std::pair<const char*, std::function<int(Outcome&)>> suites[] = {
      {"hilbert", suite_hilbert},
      {"axioms", suite_divisor_axioms},
      {"substitution", suite_substitution},
      {"chain-rule", suite_chain_rule},
      {"normal-forms", suite_normal_forms},
  };
  for (const auto& [name, run] : suites) {
    const int n = run(o);
    counts << name << "=" << n << " ";
    o.require(n >= 200, std::string(name) + " ran fewer than 200 cases");
  }
  if (o.pass) o.detail = counts.str();
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"divisor theory of the 4,6,9 monoid", criterion1},
      {"divisor theory of the 10,14,15,21 monoid", criterion2},
      {"extension counterexamples (*) and (**)", criterion3},
      {"extension of the divisor theory itself is the identity", criterion4},
      {"zeta lifts tau; tau and its inverse compose to the identity", criterion5},
      {"five-variable chain composes to zeta", criterion6},
      {"wildness certificate for rho0 and det J(zeta)", criterion7},
      {"Nagata homogeneity line", criterion8},
      {"quadric Cox data", criterion9},
      {"Q8 quotient report and invariants of +-E", criterion10},
      {"shear family degree growth", criterion11},
      {"property suites", criterion12},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s%s%s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
