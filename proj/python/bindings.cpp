#include "axial/axial_field.hpp"
#include "axial/blowup.hpp"
#include "axial/report.hpp"
#include "axial/special_family.hpp"
#include "axial/umbilic.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;

namespace {

axial::RunConfig config(const std::string& command, const std::string& family, double a, double eps, double b,
                        const std::string& map, const std::optional<std::vector<double>>& region, int grid, int threads) {
  axial::RunConfig c;
  c.command = command;
  c.family = family;
  c.a = a;
  c.eps = eps;
  c.b = b;
  c.map = map;
  if (region) {
    if (region->size() != 4) throw std::invalid_argument("region needs four values umin, umax, vmin, vmax");
    c.region = axial::Region{(*region)[0], (*region)[1], (*region)[2], (*region)[3]};
  }
  c.grid = grid;
  c.threads = threads;
  axial::validate(c);
  return c;
}

py::dict singularity(const axial::ResolvedSingularity& s) {
  py::dict d;
  d["theta"] = s.theta;
  d["type"] = axial::to_string(s.type);
  d["jacobian"] = s.jacobian;
  d["trace"] = s.trace;
  d["eigenvalues"] = s.eigenvalues;
  return d;
}

}  // namespace

PYBIND11_MODULE(_axial, m) {
  m.doc() = "axial curvature lines of surfaces in R^4";

  py::register_exception<axial::BoundaryError>(m, "BoundaryError", PyExc_ValueError);

  m.def("schema_version", [] { return axial::kSchemaVersion; });

  m.def("directions", [](const std::vector<double>& c) { return axial::binary_form_directions(c); }, py::arg("coeffs"),
        "real directions in [0, pi) of sum c[i] dv^i du^(n-i)");

  m.def(
      "family_coeffs",
      [](double a, double eps, double u, double v) {
        return axial::family_axial_coeffs({a, eps}, u, v);
      },
      py::arg("a"), py::arg("eps"), py::arg("u"), py::arg("v"), "normalized (a0bar, a1bar) of alpha_eps");

  m.def(
      "count_and_type",
      [](double a, double eps) {
        const axial::CountAndType c = axial::count_and_type({a, eps});
        py::dict d;
        d["count"] = c.count;
        d["types"] = c.types();
        d["index_sum"] = c.index_sum.str();
        py::list pts;
        for (const auto& r : c.records) pts.append(py::make_tuple(r.u, r.v, axial::to_string(r.type)));
        d["points"] = pts;
        return d;
      },
      py::arg("a"), py::arg("eps"));

  m.def(
      "resolution",
      [](double a) {
        const axial::ResolutionPortrait p = axial::resolution_portrait(a);
        py::dict d;
        d["regime"] = p.regime;
        d["sequence"] = p.sequence();
        d["saddles"] = p.saddles();
        d["nodes"] = p.nodes();
        py::list s;
        for (const auto& x : p.singularities) s.append(singularity(x));
        d["singularities"] = s;
        return d;
      },
      py::arg("a"));

  m.def(
      "critical_index",
      [](double a, double radius, int samples) {
        axial::IndexOptions opt;
        opt.samples = samples;
        const axial::FamilyField f({a, 0.0});
        const axial::QuarterIndex q = axial::index(f, 0.0, 0.0, radius, opt);
        return py::make_tuple(q.quarters, q.str(), q.residual);
      },
      py::arg("a"), py::arg("radius") = 0.1, py::arg("samples") = 720);

  m.def(
      "analyze_json",
      [](const std::string& family, double a, double eps, double b, const std::string& map,
         const std::optional<std::vector<double>>& region, int grid, int threads) {
        return axial::dump(axial::analyze(config("analyze", family, a, eps, b, map, region, grid, threads)));
      },
      py::arg("family") = "alpha_a", py::arg("a") = 0.0, py::arg("eps") = 0.0, py::arg("b") = 0.0, py::arg("map") = "",
      py::arg("region") = py::none(), py::arg("grid") = 64, py::arg("threads") = 1);

  m.def(
      "forms_json",
      [](const std::string& family, double a, double eps, double b, const std::string& map, double u, double v) {
        axial::RunConfig c = config("forms", family, a, eps, b, map, std::nullopt, 64, 1);
        c.u = u;
        c.v = v;
        return axial::dump(axial::forms(c));
      },
      py::arg("family") = "alpha_a", py::arg("a") = 0.0, py::arg("eps") = 0.0, py::arg("b") = 0.0, py::arg("map") = "",
      py::arg("u") = 0.1, py::arg("v") = 0.1);

  m.def(
      "scan_csv",
      [](const std::vector<double>& a_values, const std::vector<double>& eps_values, int threads) {
        axial::RunConfig c = config("scan", "alpha_eps", 0.0, 0.0, 0.0, "", std::nullopt, 64, threads);
        c.a_values = a_values;
        c.eps_values = eps_values;
        return axial::scan_table(c);
      },
      py::arg("a_values"), py::arg("eps_values"), py::arg("threads") = 1);

  m.def(
      "verify_json",
      [](const std::vector<std::string>& claims, const std::vector<std::string>& samples) {
        axial::RunConfig c;
        c.command = "verify";
        c.claims = claims;
        c.samples = samples;
        axial::validate(c);
        return axial::dump(axial::verify(c));
      },
      py::arg("claims") = std::vector<std::string>{}, py::arg("samples") = std::vector<std::string>{});

  m.def(
      "portrait",
      [](const std::string& family, double a, double eps, double b, const std::string& map,
         const std::optional<std::vector<double>>& region, int grid, int threads, int seeds) {
        axial::RunConfig c = config("portrait", family, a, eps, b, map, region, grid, threads);
        c.seeds = seeds;
        axial::PortraitOutput p;
        {
          py::gil_scoped_release release;
          p = axial::portrait(c);
        }
        return py::make_tuple(p.svg, p.csv, axial::dump(p.summary));
      },
      py::arg("family") = "alpha_a", py::arg("a") = 0.0, py::arg("eps") = 0.0, py::arg("b") = 0.0, py::arg("map") = "",
      py::arg("region") = py::none(), py::arg("grid") = 64, py::arg("threads") = 1, py::arg("seeds") = 6);
}
