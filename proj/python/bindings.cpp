#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coxkit/cli.hpp"
#include "coxkit/errors.hpp"
#include "coxkit/exactgeom.hpp"
#include "coxkit/grading.hpp"
#include "coxkit/poly.hpp"

namespace py = pybind11;

namespace {

coxkit::IntVector to_vector(const std::vector<py::int_>& v) {
  coxkit::IntVector out;
  for (const auto& x : v) out.emplace_back(py::str(x).cast<std::string>());
  return out;
}

std::vector<py::int_> to_python(const coxkit::IntVector& v) {
  std::vector<py::int_> out;
  for (const auto& x : v) out.push_back(py::int_(py::reinterpret_steal<py::object>(
                            PyLong_FromString(x.get_str().c_str(), nullptr, 10))));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of coxkit";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const coxkit::Error& e) {
      py::object cls = py::module_::import("coxkit").attr("CoxkitError");
      PyErr_SetObject(cls.ptr(), py::make_tuple(std::string(to_string(e.code())), e.what()).ptr());
    }
  });

  m.def("commands", &coxkit::cli::commands);

  m.def(
      "run",
      [](const std::string& command, const std::string& input, std::size_t depth, std::size_t cap, bool pretty) {
        coxkit::cli::Result r;
        {
          py::gil_scoped_release release;
          r = coxkit::cli::run(command, input, {depth, cap, pretty});
        }
        return py::make_tuple(r.exit_code, r.output);
      },
      py::arg("command"), py::arg("input"), py::arg("depth") = 8, py::arg("cap") = coxkit::kDefaultClosureCap,
      py::arg("pretty") = false, "Run a subcommand on JSON text; returns (exit_code, output).");

  m.def(
      "parse_poly",
      [](const std::string& text, const std::vector<std::string>& names) {
        return coxkit::to_string(coxkit::parse_poly(text, names), names);
      },
      py::arg("text"), py::arg("var_names"), "Canonical form of a polynomial.");

  m.def(
      "compose",
      [](const std::vector<std::vector<std::string>>& maps, const std::vector<std::string>& names) {
        coxkit::PolyMap total = coxkit::PolyMap::identity(names.size());
        for (const auto& s : maps) total = coxkit::compose(coxkit::parse_map(s, names), total);
        return coxkit::to_strings(total, names);
      },
      py::arg("maps"), py::arg("var_names"), "Composite of maps, the first applied first.");

  m.def(
      "jacobian_det",
      [](const std::vector<std::string>& images, const std::vector<std::string>& names) {
        return coxkit::to_string(coxkit::poly_det(coxkit::jacobian(coxkit::parse_map(images, names))), names);
      },
      py::arg("images"), py::arg("var_names"));

  m.def(
      "hilbert_basis",
      [](std::size_t ambient_rank, const std::vector<std::vector<py::int_>>& rays) {
        std::vector<coxkit::IntVector> gens;
        for (const auto& r : rays) gens.push_back(to_vector(r));
        std::vector<std::vector<py::int_>> out;
        for (const auto& v : coxkit::hilbert_basis(coxkit::Cone::generated_by(ambient_rank, gens)))
          out.push_back(to_python(v));
        return out;
      },
      py::arg("ambient_rank"), py::arg("rays"), "Hilbert basis of the cone spanned by rays in Z^n.");

  m.def("nagata_homogeneous_gradings", &coxkit::nagata_homogeneous_gradings, py::arg("bound"),
        "Integer weights (a, b, c) in [-bound, bound] making every Nagata image homogeneous.");
}
