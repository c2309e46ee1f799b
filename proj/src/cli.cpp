#include "coxkit/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "coxkit/errors.hpp"
#include "coxkit/grading.hpp"
#include "coxkit/monoids.hpp"
#include "coxkit/toric_cox.hpp"

namespace coxkit::cli {

namespace {

using json = nlohmann::json;

// Input that does not match a subcommand's schema.
struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const json& field(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw Malformed("expected an object holding \"" + key + "\"");
  const auto it = obj.find(key);
  if (it == obj.end()) throw Malformed("missing field \"" + key + "\"");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

// ---- readers

Int read_int(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>()))
                                                           : Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    static const std::regex re("[+-]?[0-9]+");
    const auto s = j.get<std::string>();
    if (std::regex_match(s, re)) return Int(s[0] == '+' ? s.substr(1) : s);
  }
  throw Malformed("expected an integer, got " + j.dump());
}

std::size_t read_size(const json& j) {
  const Int v = read_int(j);
  if (v < 0 || !v.fits_ulong_p()) throw Malformed("expected a nonnegative integer, got " + j.dump());
  return v.get_ui();
}

Rat read_rat(const json& j) {
  if (j.is_string()) {
    static const std::regex re("[+-]?[0-9]+(/[0-9]+)?");
    const auto s = j.get<std::string>();
    if (!std::regex_match(s, re)) throw Malformed("expected a rational, got " + j.dump());
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(read_int(j));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw Malformed("zero denominator in " + s);
    Rat r(read_int(json(s.substr(0, slash))), den);
    r.canonicalize();
    return r;
  }
  return Rat(read_int(j));
}

const json& read_array(const json& j, const char* what) {
  if (!j.is_array()) throw Malformed(std::string("expected an array for ") + what);
  return j;
}

IntVector read_vector(const json& j) {
  IntVector v;
  for (const auto& x : read_array(j, "a vector")) v.push_back(read_int(x));
  return v;
}

std::vector<IntVector> read_rows(const json& j) {
  std::vector<IntVector> rows;
  for (const auto& r : read_array(j, "a list of vectors")) rows.push_back(read_vector(r));
  return rows;
}

std::vector<std::string> read_strings(const json& j) {
  std::vector<std::string> out;
  for (const auto& s : read_array(j, "a list of strings")) {
    if (!s.is_string()) throw Malformed("expected a string, got " + s.dump());
    out.push_back(s.get<std::string>());
  }
  return out;
}

IntMatrix read_matrix(const json& j, std::size_t cols) {
  const auto rows = read_rows(j);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Malformed("matrix rows have different lengths");
  return IntMatrix::from_rows(rows, cols);
}

std::string text(const json& j) {
  if (!j.is_string()) throw Malformed("expected a string, got " + j.dump());
  return j.get<std::string>();
}

AffineMonoid read_monoid(const json& j) {
  const std::size_t n = read_size(field(j, "ambient_rank"));
  auto gens = read_rows(field(j, "generators"));
  for (const auto& g : gens)
    if (g.size() != n) throw Malformed("generator length differs from ambient_rank");
  return AffineMonoid(n, std::move(gens));
}

Cone read_cone(const json& j) {
  const std::size_t n = read_size(field(j, "ambient_rank"));
  const auto rays = read_rows(field(j, "rays"));
  for (const auto& r : rays)
    if (r.size() != n) throw Malformed("ray length differs from ambient_rank");
  std::optional<IntMatrix> lattice;
  if (const json* l = optional_field(j, "lattice")) lattice = read_matrix(*l, n);
  return Cone::generated_by(n, rays, lattice);
}

CoxData read_cox(const json& in) {
  std::optional<std::vector<IntVector>> order;
  if (const json* o = optional_field(in, "ray_order")) order = read_rows(*o);
  return cox_data(read_cone(field(in, "cone")), order);
}

std::vector<std::string> read_names(const json& in, const std::string& prefix) {
  if (const json* v = optional_field(in, "var_names")) return read_strings(*v);
  return default_var_names(read_size(field(in, "num_vars")), prefix);
}

GradedRing read_grading(const json& j) {
  GradedRing r;
  r.group.free_rank = read_size(field(j, "free_rank"));
  if (const json* t = optional_field(j, "torsion")) r.group.torsion = read_vector(*t);
  r.group.validate();
  for (const auto& d : read_rows(field(j, "var_degrees"))) {
    if (d.size() != r.group.width()) throw Malformed("degree length differs from the group width");
    r.var_degrees.push_back(make_elem(r.group, IntVector(d.begin(), d.begin() + r.group.free_rank),
                                      IntVector(d.begin() + r.group.free_rank, d.end())));
  }
  r.num_vars = r.var_degrees.size();
  return r;
}

GradedRing ring_or_quadric(const json& in) {
  if (const json* g = optional_field(in, "grading")) return read_grading(*g);
  return quadric_ring();
}

CycloNum read_cyclo(const json& j, unsigned conductor) {
  std::vector<Rat> coeffs;
  if (j.is_array())
    for (const auto& c : j) coeffs.push_back(read_rat(c));
  else
    coeffs.push_back(read_rat(j));
  return CycloNum::from_coeffs(conductor, coeffs);
}

MatGroup read_group(const json& j, std::size_t cap) {
  const std::size_t dim = read_size(field(j, "dim"));
  const std::size_t n = read_size(field(j, "conductor"));
  if (n == 0 || n > 100000) throw Malformed("conductor out of range");
  const auto cond = static_cast<unsigned>(n);
  std::vector<CycloMatrix> gens;
  for (const auto& g : read_array(field(j, "generators"), "generators")) {
    CycloMatrix m;
    for (const auto& row : read_array(g, "a matrix")) {
      std::vector<CycloNum> r;
      for (const auto& x : read_array(row, "a matrix row")) r.push_back(read_cyclo(x, cond));
      m.push_back(std::move(r));
    }
    gens.push_back(std::move(m));
  }
  return close_group(dim, cond, gens, cap);
}

// ---- writers

json out(const Int& v) { return v.get_str(); }
json out(std::size_t v) { return std::to_string(v); }

json out(const IntVector& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

json out(const std::vector<IntVector>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(out(r));
  return a;
}

json out(const IntMatrix& m) { return out(m.row_vectors()); }

json out(const GroupElem& e) {
  IntVector flat = e.free_part;
  flat.insert(flat.end(), e.torsion_part.begin(), e.torsion_part.end());
  return out(flat);
}

json out_strings(const std::vector<std::string>& v) { return json(v); }

std::string kind_name(NormalizeReport::Kind k) {
  switch (k) {
    case NormalizeReport::Kind::Preserves: return "Preserves";
    case NormalizeReport::Kind::Normalizes: return "Normalizes";
    case NormalizeReport::Kind::Neither: break;
  }
  return "Neither";
}

// ---- subcommands

using Handler = std::function<json(const json&, const Options&)>;

json cmd_divisor_theory(const json& in, const Options&) {
  const AffineMonoid m = read_monoid(field(in, "monoid"));
  const DivisorTheory dt = divisor_theory(m);
  bool coordinate = dt.free_rank() == m.ambient_rank();
  for (std::size_t j = 0; coordinate && j < m.ambient_rank(); ++j) {
    IntVector e(m.ambient_rank(), 0);
    e[j] = 1;
    coordinate = dt.functionals.row(j) == restrict_functional(m, e);
  }
  return {{"kind", "DivisorTheory"},
          {"rank", out(dt.free_rank())},
          {"group_basis", out(m.group_basis())},
          {"functionals", out(dt.functionals)},
          {"coordinate_functionals", coordinate},
          {"generator_images", out(dt.generator_images())}};
}

DivisorTheory theory_from(const json& in) {
  AffineMonoid m = read_monoid(field(in, "monoid"));
  if (const json* f = optional_field(in, "functionals"))
    return DivisorTheory::from_ambient(std::move(m), read_matrix(*f, m.ambient_rank()));
  return divisor_theory(m);
}

json cmd_check_axioms(const json& in, const Options& opts) {
  const DivisorTheory dt = theory_from(in);
  const AxiomReport r = verify_divisor_axioms(dt, opts.depth);
  json o{{"kind", "AxiomReport"}, {"passed", r.passed}, {"depth", out(opts.depth)},
         {"failed_axiom", out(static_cast<std::size_t>(r.failed_axiom))}};
  if (r.a) o["a"] = out(*r.a);
  if (r.b) o["b"] = out(*r.b);
  if (r.c1) o["c1"] = out(*r.c1);
  if (r.d1) o["d1"] = out(*r.d1);
  if (r.d2) o["d2"] = out(*r.d2);
  return o;
}

json cmd_extend(const json& in, const Options& opts) {
  const DivisorTheory dt = theory_from(in);
  const json& a = field(in, "alpha");
  const MonoidHom alpha = optional_field(a, "generator_images")
                              ? MonoidHom::from_generator_images(dt.monoid, read_rows(field(a, "generator_images")))
                              : MonoidHom::from_matrix(dt.monoid, read_matrix(field(a, "matrix"), dt.monoid.ambient_rank()));
  const ExtensionResult r = extend_embedding(dt, alpha, opts.depth);
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Beta>)
          return {{"kind", "Beta"}, {"matrix", out(v.matrix)}};
        else if constexpr (std::is_same_v<T, ViolationStar>)
          return {{"kind", "ViolationStar"}, {"a", out(v.a)}, {"b", out(v.b)}, {"s", out(v.s)}};
        else if constexpr (std::is_same_v<T, ViolationStarStar>)
          return {{"kind", "ViolationStarStar"},
                  {"witness_set", out(v.witness_set)},
                  {"common_prime_index", out(v.common_prime_index)}};
        else
          return {{"kind", "NotAnEmbedding"}, {"a", out(v.a)}, {"b", out(v.b)}};
      },
      r);
}

json cmd_saturate(const json& in, const Options&) {
  const AffineMonoid m = read_monoid(field(in, "monoid"));
  std::optional<IntMatrix> lattice;
  if (const json* l = optional_field(in, "lattice")) lattice = read_matrix(*l, m.ambient_rank());
  const SaturationReport r = is_saturated(m, lattice);
  const Cone c = Cone::generated_by(m.ambient_rank(), m.generators(), lattice ? lattice : m.group_basis());
  json o{{"kind", "SaturationReport"}, {"saturated", r.saturated}, {"hilbert_basis", out(hilbert_basis(c))}};
  o["witness"] = r.witness ? out(*r.witness) : json(nullptr);
  return o;
}

json cmd_cox_data(const json& in, const Options&) {
  const CoxData cd = read_cox(in);
  json degrees = json::array();
  for (const auto& d : cd.var_degrees) degrees.push_back(out(d));
  const auto names = default_var_names(cd.rays.size());
  json pulled = json::array();
  for (const auto& u : cd.characters) pulled.push_back(to_string(pullback(cd, u), names));
  return {{"kind", "CoxData"},
          {"rays", out(cd.rays)},
          {"cl_group", {{"free_rank", out(cd.cl_group.free_rank)}, {"torsion", out(cd.cl_group.torsion)}}},
          {"var_degrees", degrees},
          {"ray_pairing", out(cd.ray_pairing)},
          {"characters", out(cd.characters)},
          {"character_pullbacks", pulled}};
}

json cmd_pullback(const json& in, const Options&) {
  const CoxData cd = read_cox(in);
  const auto names = default_var_names(cd.rays.size());
  if (const json* cs = optional_field(in, "characters")) {
    json a = json::array();
    for (const auto& u : read_rows(*cs)) a.push_back(to_string(pullback(cd, u), names));
    return {{"monomials", a}};
  }
  return {{"monomial", to_string(pullback(cd, read_vector(field(in, "character"))), names)}};
}

LiftConvention read_convention(const json& in) {
  const json* c = optional_field(in, "convention");
  if (!c) return LiftConvention::LeftAction;
  const std::string s = text(*c);
  if (s == "left-action") return LiftConvention::LeftAction;
  if (s == "pullback") return LiftConvention::Pullback;
  throw Malformed("convention must be \"left-action\" or \"pullback\"");
}

json cmd_verify_lift(const json& in, const Options&) {
  const CoxData cd = read_cox(in);
  const std::size_t n = cd.rays.size(), k = cd.characters.size();
  const PolyMap psi = parse_map(read_strings(field(in, "psi")), default_var_names(k, "x"));
  const auto phi_text = read_strings(field(in, "phi"));
  if (psi.source_vars() != k || phi_text.size() != n) throw Malformed("psi or phi has the wrong number of images");
  const GradedEndo phi = GradedEndo::general(cox_ring(cd), parse_map(phi_text, default_var_names(n)));
  const LiftConvention conv = read_convention(in);
  return {{"kind", "LiftCheck"},
          {"convention", conv == LiftConvention::LeftAction ? "left-action" : "pullback"},
          {"normalizes", kind_name(check_normalizes(phi).kind)},
          {"lifts", verify_lift(cd, psi, phi, conv)}};
}

json cmd_compose(const json& in, const Options&) {
  const auto names = read_names(in, "y");
  PolyMap total = PolyMap::identity(names.size());
  for (const auto& m : read_array(field(in, "maps"), "maps")) {
    const PolyMap step = parse_map(read_strings(m), names);
    if (step.source_vars() != names.size()) throw Malformed("every map needs one image per variable");
    total = compose(step, total);
  }
  return {{"images", out_strings(to_strings(total, names))}};
}

json cmd_jacobian(const json& in, const Options&) {
  const auto names = read_names(in, "y");
  const PolyMap m = parse_map(read_strings(field(in, "map")), names);
  const PolyMatrix jm = jacobian(m);
  json rows = json::array();
  for (const auto& r : jm) {
    json row = json::array();
    for (const Poly& p : r) row.push_back(to_string(p, names));
    rows.push_back(row);
  }
  json o{{"matrix", rows}};
  if (m.source_vars() == names.size()) o["det"] = to_string(poly_det(jm), names);
  return o;
}

GradedEndo read_step(const GradedRing& r, const json& s, const std::vector<std::string>& names) {
  const std::string kind = text(field(s, "kind"));
  if (kind == "linear") {
    std::vector<std::vector<Rat>> m;
    for (const auto& row : read_array(field(s, "matrix"), "matrix")) {
      std::vector<Rat> v;
      for (const auto& x : read_array(row, "matrix row")) v.push_back(read_rat(x));
      m.push_back(std::move(v));
    }
    return elementary_linear(r, m);
  }
  const std::size_t i = read_size(field(s, "index"));
  if (i == 0 || i > r.num_vars) throw Malformed("index must be between 1 and the number of variables");
  const Poly f = parse_poly(text(field(s, "increment")), names);
  if (kind == "shear") return elementary_shear(r, i - 1, f);
  if (kind == "update") return coordinate_update(r, i - 1, f);
  throw Malformed("step kind must be \"shear\", \"update\" or \"linear\"");
}

json cmd_wildness_cert(const json& in, const Options&) {
  const GradedRing q = quadric_ring();
  const auto names = default_var_names(4);
  WildnessResult r;
  if (const json* rho = optional_field(in, "rho")) {
    r = certify_rho(parse_map(read_strings(*rho), names));
  } else {
    std::vector<GradedEndo> seq;
    for (const auto& s : read_array(field(in, "steps"), "steps")) seq.push_back(read_step(q, s, names));
    r = wildness_certificate(seq);
  }
  if (const auto* nz = std::get_if<NotZeta>(&r))
    return {{"kind", "NotZeta"},
            {"var", out(nz->var + 1)},
            {"composed_image", to_string(nz->composed_image, names)},
            {"zeta_image", to_string(nz->zeta_image, names)}};
  const auto& c = std::get<Certificate>(r);
  return {{"kind", "Certificate"},
          {"rho", out_strings(to_strings(c.rho, names))},
          {"f", to_string(c.f, names)},
          {"g", to_string(c.g, names)},
          {"det_j", to_string(c.det_j, names)},
          {"residual", to_string(c.residual, names)},
          {"f_in_i3", c.f_in_i3},
          {"g_in_i3", c.g_in_i3},
          {"fixes_y3_y4", c.fixes_y3_y4},
          {"residual_in_i2", c.residual_in_i2},
          {"det_nonconstant", c.det_nonconstant}};
}

json cmd_shear_family(const json& in, const Options&) {
  const GradedRing r = ring_or_quadric(in);
  const auto names = default_var_names(r.num_vars);
  const std::size_t i = read_size(field(in, "index"));
  if (i == 0 || i > r.num_vars) throw Malformed("index must be between 1 and the number of variables");
  const Poly f = parse_poly(text(field(in, "f")), names);
  const Poly h = parse_poly(text(field(in, "h")), names);
  const json* p = optional_field(in, "probe");
  const Poly probe = parse_poly(p ? text(*p) : std::string("y1*y3"), names);
  const std::size_t k_min = optional_field(in, "k_min") ? read_size(in["k_min"]) : 1;
  const std::size_t k_max = read_size(field(in, "k_max"));
  if (k_max > 64) throw Malformed("k_max is limited to 64");
  json members = json::array();
  bool increasing = true;
  int last = -1;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const GradedEndo e = shear_family(r, i - 1, f, h, static_cast<unsigned>(k));
    const Poly image = substitute(probe, e.map);
    const int deg = image.total_degree();
    if (k > k_min && deg <= last) increasing = false;
    last = deg;
    members.push_back({{"k", out(k)},
                       {"images", out_strings(to_strings(e.map, names))},
                       {"probe_image", to_string(image, names)},
                       {"probe_degree", std::to_string(deg)}});
  }
  return {{"members", members}, {"strictly_increasing", increasing}};
}

json cmd_quotient_report(const json& in, const Options& opts) {
  const json& gj = optional_field(in, "group") ? in["group"] : in;
  const MatGroup g = read_group(gj, opts.cap);
  const QuotientReport r = quotient_report(g);
  json inv = json::array();
  for (const Int& d : r.n_invariants) inv.push_back(out(d));
  return {{"kind", "QuotientReport"},
          {"order_g", out(r.order_g)},
          {"order_h", out(r.order_h)},
          {"order_htilde", out(r.order_htilde)},
          {"pseudoreflections", out(pseudoreflections(g).size())},
          {"f_abelian", r.f_abelian},
          {"commutant_order", out(r.commutant_order)},
          {"n_invariants", inv},
          {"is_toric", r.is_toric}};
}

json cmd_reynolds(const json& in, const Options& opts) {
  const MatGroup g = read_group(field(in, "group"), opts.cap);
  const std::size_t d = read_size(field(in, "degree"));
  if (d > 64) throw Malformed("degree is limited to 64");
  const auto basis = reynolds_invariants(g, static_cast<unsigned>(d));
  const auto names = default_var_names(g.dim(), "x");
  json inv = json::array();
  for (const auto& p : basis) inv.push_back(to_string(p, names));
  return {{"degree", out(d)}, {"dimension", out(basis.size())}, {"invariants", inv}};
}

json cmd_parse_poly(const json& in, const Options&) {
  const auto names = read_names(in, "y");
  const Poly p = parse_poly(text(field(in, "text")), names);
  json terms = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    json e = json::array();
    for (unsigned x : it->first) e.push_back(std::to_string(x));
    terms.push_back({{"coefficient", it->second.get_str()}, {"exponents", e}});
  }
  return {{"canonical", to_string(p, names)},
          {"total_degree", std::to_string(p.total_degree())},
          {"terms", terms}};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"divisor-theory", cmd_divisor_theory}, {"check-axioms", cmd_check_axioms},
      {"extend", cmd_extend},                 {"saturate", cmd_saturate},
      {"cox-data", cmd_cox_data},             {"pullback", cmd_pullback},
      {"verify-lift", cmd_verify_lift},       {"compose", cmd_compose},
      {"jacobian", cmd_jacobian},             {"wildness-cert", cmd_wildness_cert},
      {"shear-family", cmd_shear_family},     {"quotient-report", cmd_quotient_report},
      {"reynolds", cmd_reynolds},             {"parse-poly", cmd_parse_poly},
  };
  return table;
}

std::string render(const json& j, const Options& opts) { return j.dump(opts.pretty ? 2 : -1) + "\n"; }

Result failure(int code, const std::string& name, const std::string& message, const Options& opts) {
  return {code, render({{"error", {{"code", name}, {"message", message}}}}, opts)};
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

Result run(const std::string& command, const std::string& input, const Options& opts) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) return failure(2, "UnknownCommand", "unknown command: " + command, opts);
  try {
    json in = json::parse(input);
    if (in.is_object() && in.contains("payload")) in = in["payload"];
    return {0, render(it->second(in, opts), opts)};
  } catch (const json::exception& e) {
    return failure(2, "MalformedInput", e.what(), opts);
  } catch (const Malformed& e) {
    return failure(2, "MalformedInput", e.what(), opts);
  } catch (const Error& e) {
    return failure(1, std::string(to_string(e.code())), e.what(), opts);
  }
}

Result run_file(const std::string& command, const std::string& path, const Options& opts) {
  std::string input;
  if (path == "-") {
    input.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(path);
    if (!f) return failure(2, "MalformedInput", "cannot read " + path, opts);
    std::ostringstream ss;
    ss << f.rdbuf();
    input = ss.str();
  }
  return run(command, input, opts);
}

}  // namespace coxkit::cli
