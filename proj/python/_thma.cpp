#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "thma/constructions.hpp"
#include "thma/error.hpp"
#include "thma/io.hpp"
#include "thma/verifiers.hpp"

namespace py = pybind11;
using namespace thma;

namespace {

Json parse(const std::string& text) { return parse_json(text, "<string>"); }

CatPtr category(const std::string& text) {
  CatPtr c = share(category_from_json(parse(text)));
  const auto report = validate_category(*c);
  if (!report.ok()) throw AxiomViolation(report.violations.front());
  return c;
}

CatFunctor functor(const std::string& text, const std::string& base_dir) {
  CatFunctor f = functor_from_json(parse(text), base_dir);
  const auto report = validate_functor(f);
  if (!report.ok()) throw AxiomViolation(report.violations.front());
  return f;
}

std::string build(const std::string& construction, const std::string& text, const std::string& base_dir) {
  if (construction == "T") return canonical(category_to_json(*t_category(category(text)).category));
  if (construction == "Top") return canonical(category_to_json(*t_op_category(category(text)).category));
  if (construction == "twisted") return canonical(category_to_json(*twisted_arrow(category(text)).category));
  if (construction == "comma") return canonical(category_to_json(*comma_slice(functor(text, base_dir)).category));
  if (construction == "S") return canonical(category_to_json(*s_category(functor(text, base_dir)).category));
  if (construction == "cech") return canonical(category_to_json(*cech_category(cover_from_json(parse(text))).category));
  if (construction == "fatten") {
    const auto surj = surjection_from_json(parse(text), base_dir);
    return canonical(functor_to_json(fatten(surj.category, surj.surjection).f));
  }
  throw InvalidArgument("unknown construction '" + construction + "'");
}

std::string check(const std::string& theorem, const std::string& text, int truncation, std::size_t budget,
                  const std::string& base_dir) {
  if (theorem == "a") return canonical(verdict_to_json(theorem_a_check(functor(text, base_dir), truncation, budget)));
  if (theorem == "morita") return canonical(verdict_to_json(morita_check(functor(text, base_dir), truncation, budget)));
  if (theorem == "cover") return canonical(verdict_to_json(segal_cover_check(cover_from_json(parse(text)), truncation, budget)));
  throw InvalidArgument("unknown check '" + theorem + "'");
}

}  // namespace

PYBIND11_MODULE(_thma, m) {
  m.doc() = "Finite categories, nerves and homology checks. Documents are JSON strings.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DocumentError>(m, "DocumentError", invalid.ptr());
  py::register_exception<AxiomViolation>(m, "AxiomViolation", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ConsistencyFault>(m, "ConsistencyFault", base.ptr());

  m.attr("DEFAULT_TRUNCATION") = kDefaultTruncation;
  m.attr("DEFAULT_BUDGET") = kDefaultLevelBudget;

  m.def("validate", [](const std::string& text) { return validate_category(category_from_json(parse(text))).violations; },
        py::arg("category"), "Axiom violations of a category document; empty when valid.");
  m.def("close_composition", [](const std::string& text) { return canonical(close_composition(parse(text))); },
        py::arg("category"));
  m.def(
      "homology",
      [](const std::string& text, int truncation, std::size_t budget) {
        return canonical(homology_to_json(simplicial_homology(*nerve(category(text), truncation, budget).sset)));
      },
      py::arg("category"), py::arg("truncation") = kDefaultTruncation, py::arg("budget") = kDefaultLevelBudget,
      "Integral homology of the truncated nerve.");
  m.def(
      "certify_contractible",
      [](const std::string& text, int truncation, std::size_t budget) {
        return canonical(certificate_to_json(certify_contractible(category(text), truncation, budget)));
      },
      py::arg("category"), py::arg("truncation") = kDefaultTruncation, py::arg("budget") = kDefaultLevelBudget);
  m.def("build", &build, py::arg("construction"), py::arg("document"), py::arg("base_dir") = ".",
        "One of T, Top, twisted, comma, S, cech, fatten. Returns the resulting document.");
  m.def("check", &check, py::arg("theorem"), py::arg("document"), py::arg("truncation") = kDefaultTruncation,
        py::arg("budget") = kDefaultLevelBudget, py::arg("base_dir") = ".", "One of a, morita, cover. Returns the verdict.");
  m.def("to_dot", [](const std::string& text) { return to_dot(*category(text)); }, py::arg("category"));
  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in process; returns (exit code, stdout, stderr).");
}
