// escops._core: python bindings over the exact-rational engine.
//
// Elements travel as strings in the same grammar the C++ parser and
// printers use; structured results (dimension vectors, reports) come back
// as plain lists/dicts or as the JSON report strings the CLI emits.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/bar.hpp"
#include "escops/escoperad.hpp"
#include "escops/oracle.hpp"
#include "escops/torsor.hpp"
#include "escops/verify.hpp"

namespace py = pybind11;
using namespace escops;

namespace {

arnold::AlgebraContext actx(int n, int r) { return arnold::AlgebraContext{n, r}; }

esc::EscContext ectx(int m, int n, int k, int l) {
  return esc::EscContext{m, n, k, l, esc::Color::mixed};
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "exact-rational engine for two-colored disk-configuration cohomology";

  mod.def(
      "arnold_hilbert",
      [](int n, int r) { return arnold::hilbert_polynomial(actx(n, r)); },
      py::arg("n"), py::arg("r"),
      "Dimensions of the arity-r component by degree; the total is r!.");

  mod.def(
      "arnold_normal_form",
      [](int n, int r, const std::string& expr) {
        return arnold::to_string(arnold::parse_element(actx(n, r), expr));
      },
      py::arg("n"), py::arg("r"), py::arg("expr"),
      "Normal form of an element written in generators, e.g. 'w[1,2]*w[2,3]'.");

  mod.def(
      "arnold_multiply",
      [](int n, int r, const std::string& a, const std::string& b) {
        const auto ctx = actx(n, r);
        return arnold::to_string(
            arnold::multiply(arnold::parse_element(ctx, a), arnold::parse_element(ctx, b)));
      },
      py::arg("n"), py::arg("r"), py::arg("a"), py::arg("b"),
      "Product of two elements, in normal form.");

  mod.def(
      "oracle_dims",
      [](int n, int r) { return oracle::Oracle(n, r).dims((n - 1) * std::max(r - 1, 0)); },
      py::arg("n"), py::arg("r"),
      "Basis dimensions by degree from the configuration-pairing oracle.");

  mod.def(
      "esc_hilbert",
      [](int m, int n, int k, int l) { return esc::esc_hilbert(ectx(m, n, k, l)); },
      py::arg("m"), py::arg("n"), py::arg("k"), py::arg("l"),
      "Dimensions of the mixed component with k free and l constrained points.");

  mod.def(
      "esc_basis",
      [](int m, int n, int k, int l) {
        std::vector<std::string> out;
        for (const auto& lbl : esc::esc_basis(ectx(m, n, k, l)))
          out.push_back(esc::label_to_string(lbl));
        return out;
      },
      py::arg("m"), py::arg("n"), py::arg("k"), py::arg("l"),
      "Canonically ordered basis labels of the mixed component.");

  mod.def(
      "em_collapse",
      [](int m, int n, int k, int l, int bound) {
        const bar::CollapseReport rep = bar::em_collapse_check(m, n, k, l, bound);
        py::dict out;
        out["pass"] = rep.pass;
        out["method"] = rep.method;
        out["expected"] = rep.expected;
        py::dict tor0;
        for (const auto& [deg, dim] : rep.tor.tor0) tor0[py::int_(deg)] = dim;
        out["tor0"] = tor0;
        out["higher_total"] = rep.tor.higher_total();
        if (!rep.failure.empty()) out["failure"] = rep.failure;
        return out;
      },
      py::arg("m"), py::arg("n"), py::arg("k"), py::arg("l"), py::arg("bound") = 6,
      "Two-sided bar collapse certificate for one mixed cell.");

  mod.def(
      "verify_arnold",
      [](int n, int r, std::uint64_t seed, int samples) {
        return verify::reports_to_json({verify::verify_arnold(n, r, seed, samples)});
      },
      py::arg("n"), py::arg("r"), py::arg("seed") = 0, py::arg("samples") = 200,
      "One-colored property suite; returns the JSON report.");

  mod.def(
      "verify_colored",
      [](int m, int n, int bound, std::uint64_t seed) {
        return verify::reports_to_json({verify::verify_hopf_cooperad(m, n, bound, seed)});
      },
      py::arg("m"), py::arg("n"), py::arg("bound") = 3, py::arg("seed") = 0,
      "Two-colored Hopf-cooperad property suite; returns the JSON report.");

  mod.def(
      "verify_bar",
      [](int m, int n, int sum_bound, int degree_bound) {
        return verify::reports_to_json({verify::verify_bar(m, n, sum_bound, degree_bound)});
      },
      py::arg("m"), py::arg("n"), py::arg("sum_bound") = 3, py::arg("degree_bound") = 6,
      "Collapse certificates over a range of cells; returns the JSON report.");

  mod.def(
      "verify_torsor",
      [](int m, int n, int truncation) {
        return verify::reports_to_json({verify::verify_torsor(m, n, truncation)});
      },
      py::arg("m"), py::arg("n"), py::arg("truncation") = 3,
      "Swiss-cheese type suite with its two controls; returns the JSON report.");

  mod.def(
      "torsor_synth",
      [](int m, int n, int truncation) {
        const auto data = torsor::from_cohomology(m, n, truncation);
        return torsor::report_to_json(torsor::check_swiss_cheese_type(data, truncation));
      },
      py::arg("m"), py::arg("n"), py::arg("truncation") = 3,
      "Build the zero-differential cohomology model and check it.");

  mod.def(
      "torsor_check",
      [](const std::string& data_json) {
        const auto data = torsor::from_json(data_json);
        return torsor::report_to_json(torsor::check_swiss_cheese_type(data, data.truncation));
      },
      py::arg("data_json"),
      "Check dg-colored-operad/1 JSON data; raises ValueError on schema errors.");
}
