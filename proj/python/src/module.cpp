#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/field_io.hpp"
#include "kp5/grid.hpp"
#include "kp5/norms.hpp"
#include "kp5/resonance.hpp"
#include "kp5/suites.hpp"

namespace py = pybind11;
using namespace kp5;

namespace {

// Physical samples come and go as (ny, nx) arrays: row j holds y = j·ly/ny.
py::array_t<double> samples_of(const Field& f) {
  const auto& g = f.grid();
  py::array_t<double> out({g.ny(), g.nx()});
  const std::vector<double> u = f.physical();
  std::copy(u.begin(), u.end(), out.mutable_data());
  return out;
}

Field field_of(const SpectralGrid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != g.ny() || a.shape(1) != g.nx()) {
    throw SpecError("samples must have shape (ny, nx) matching the grid");
  }
  return Field::from_physical(g, std::span<const double>(a.data(), g.size()));
}

DispersionParams params_of(const std::string& kp, double alpha) {
  if (kp == "KP1") return {KpSign::KP1, alpha, ZeroModePolicy::ProjectOut};
  if (kp == "KP2") return {KpSign::KP2, alpha, ZeroModePolicy::ProjectOut};
  throw SpecError("kp must be \"KP1\" or \"KP2\"");
}

py::dict report_dict(const SuiteReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["columns"] = r.columns;
  d["rows"] = r.rows;
  py::dict summary;
  for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
  d["summary"] = summary;
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict x;
    x["name"] = c.name;
    x["passed"] = c.passed;
    x["value"] = c.value;
    x["threshold"] = c.threshold;
    checks.append(x);
  }
  d["checks"] = checks;
  d["passed"] = r.passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_kp5, m) {
  m.doc() = "Pseudospectral lab for fifth-order KP equations";

  py::register_exception<Kp5Error>(m, "Kp5Error", PyExc_RuntimeError);
  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);

  py::class_<SpectralGrid>(m, "Grid")
      .def(py::init(&make_grid), py::arg("nx"), py::arg("ny"), py::arg("lx"), py::arg("ly"))
      .def_property_readonly("nx", &SpectralGrid::nx)
      .def_property_readonly("ny", &SpectralGrid::ny)
      .def_property_readonly("lx", &SpectralGrid::lx)
      .def_property_readonly("ly", &SpectralGrid::ly)
      .def_property_readonly("cell_area", &SpectralGrid::cell_area)
      .def("xi", &SpectralGrid::xi)
      .def("mu", &SpectralGrid::mu);

  m.def("omega", [](double xi, double mu, const std::string& kp, double alpha) {
    return dispersion_omega(xi, mu, params_of(kp, alpha));
  }, py::arg("xi"), py::arg("mu"), py::arg("kp") = "KP1", py::arg("alpha") = 0.0);

  m.def("resonance", [](double xi1, double xi2, double mu1, double mu2, const std::string& kp, double alpha) {
    return resonance(xi1, xi2, mu1, mu2, params_of(kp, alpha));
  }, py::arg("xi1"), py::arg("xi2"), py::arg("mu1"), py::arg("mu2"), py::arg("kp") = "KP1", py::arg("alpha") = 0.0);

  m.def("propagate", [](const SpectralGrid& g, const py::array_t<double>& u, double t, const std::string& kp,
                        double alpha) {
    return samples_of(linear_propagate(field_of(g, u), t, params_of(kp, alpha)));
  }, py::arg("grid"), py::arg("u"), py::arg("t"), py::arg("kp") = "KP1", py::arg("alpha") = 0.0);

  m.def("zero_mode_project", [](const SpectralGrid& g, const py::array_t<double>& u) {
    return samples_of(zero_mode_project(field_of(g, u)));
  }, py::arg("grid"), py::arg("u"));

  m.def("mass", [](const SpectralGrid& g, const py::array_t<double>& u) { return mass(field_of(g, u)); },
        py::arg("grid"), py::arg("u"));
  m.def("energy", [](const SpectralGrid& g, const py::array_t<double>& u, const std::string& kp, double alpha) {
    return energy_functional(field_of(g, u), params_of(kp, alpha));
  }, py::arg("grid"), py::arg("u"), py::arg("kp") = "KP1", py::arg("alpha") = 0.0);
  m.def("sobolev_norm", [](const SpectralGrid& g, const py::array_t<double>& u, double s1, double s2) {
    return sobolev_aniso_norm(field_of(g, u), {s1, s2, 0.0});
  }, py::arg("grid"), py::arg("u"), py::arg("s1") = 0.0, py::arg("s2") = 0.0);

  m.def("evolve", [](const SpectralGrid& g, const py::array_t<double>& u, double dt, double t_final,
                     const std::string& kp, double alpha, bool nonlinear) {
    SolverConfig sc;
    sc.dt = dt;
    sc.t_final = t_final;
    EvolveOptions o;
    o.quiet = true;
    o.nonlinear = nonlinear;
    o.state_stride = sc.step_count();
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = evolve(field_of(g, u), sc, params_of(kp, alpha), o);
    }
    py::dict d;
    std::vector<double> t, ms, es;
    for (const auto& r : tr.diagnostics) {
      t.push_back(r.t);
      ms.push_back(r.mass);
      es.push_back(r.energy);
    }
    d["t"] = t;
    d["mass"] = ms;
    d["energy"] = es;
    d["final"] = samples_of(tr.states.back());
    return d;
  }, py::arg("grid"), py::arg("u"), py::arg("dt"), py::arg("t_final"), py::arg("kp") = "KP1",
     py::arg("alpha") = 0.0, py::arg("nonlinear") = true);

  m.def("write_dump", [](const std::filesystem::path& p, const SpectralGrid& g, const py::array_t<double>& u,
                         double time) { write_dump(p, field_of(g, u), time); },
        py::arg("path"), py::arg("grid"), py::arg("u"), py::arg("time") = 0.0);
  m.def("read_dump", [](const std::filesystem::path& p) {
    const FieldDump d = read_dump(p);
    return py::make_tuple(d.field.grid(), samples_of(d.field), d.time);
  }, py::arg("path"));

  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name, std::uint64_t seed, std::size_t samples) {
    SuiteReport r;
    {
      py::gil_scoped_release release;
      r = run_suite(name, seed, samples);
    }
    return report_dict(r);
  }, py::arg("name"), py::arg("seed") = 0, py::arg("samples") = 0);
}
