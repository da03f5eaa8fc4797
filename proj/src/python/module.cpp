// Copyright 2026 wgdipole contributors
// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: mode census, dyadic propagators,
// ensemble assembly and solves, transmission scans, and scaling fits.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wgdipole/analysis.hpp"
#include "wgdipole/errors.hpp"
#include "wgdipole/green_free.hpp"
#include "wgdipole/green_waveguide.hpp"
#include "wgdipole/sigma.hpp"
#include "wgdipole/solve.hpp"
#include "wgdipole/transport.hpp"
#include "wgdipole/units.hpp"

namespace py = pybind11;

namespace {

wgdipole::TransmissionCurve curve_from_columns(
    const std::vector<double>& lengths, const std::vector<double>& t_mean,
    const std::vector<double>& t_stderr) {
  if (lengths.size() != t_mean.size() || lengths.size() != t_stderr.size()) {
    throw wgdipole::ConfigError("curve columns must have equal length");
  }
  wgdipole::TransmissionCurve curve;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    wgdipole::CurvePoint point;
    point.length = lengths[i];
    point.t_mean = t_mean[i];
    point.t_stderr = t_stderr[i];
    point.t_geomean = t_mean[i];
    point.n_realizations = 1;
    curve.points.push_back(point);
  }
  return curve;
}

Eigen::MatrixXd positions_matrix(const wgdipole::Realization& real) {
  Eigen::MatrixXd out(real.n_atoms(), 3);
  for (int i = 0; i < real.n_atoms(); ++i) out.row(i) = real.positions[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dipole ensembles in a PEC rectangular waveguide: propagators, "
            "collective spectra, transmission scans, and scaling fits.";

  py::register_exception<wgdipole::ConfigError>(m, "ConfigError",
                                                PyExc_ValueError);
  py::register_exception<wgdipole::NumericalError>(m, "NumericalError",
                                                   PyExc_ArithmeticError);
  py::register_exception<wgdipole::IoError>(m, "IoError", PyExc_OSError);

  m.attr("k0") = wgdipole::k0;
  m.attr("gamma0") = wgdipole::gamma0;
  m.attr("sigma0") = wgdipole::sigma0;

  py::class_<wgdipole::WaveguideGeometry>(m, "WaveguideGeometry")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &wgdipole::WaveguideGeometry::a)
      .def_readwrite("b", &wgdipole::WaveguideGeometry::b);

  py::class_<wgdipole::Mode>(m, "Mode")
      .def_property_readonly("label", &wgdipole::Mode::label)
      .def_readonly("m", &wgdipole::Mode::m)
      .def_readonly("n", &wgdipole::Mode::n);

  m.def(
      "propagating_modes",
      [](double a, double b, double k) {
        const wgdipole::WaveguideGeometry geom{a, b};
        std::vector<py::tuple> out;
        for (const auto& mode : wgdipole::propagating_modes(geom, k)) {
          out.push_back(py::make_tuple(
              mode.label(), mode.kc,
              wgdipole::longitudinal_wavenumber(k, mode.kc).real()));
        }
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("k") = wgdipole::k0,
      "Propagating (label, kc, kz) triples sorted by cutoff.");

  m.def("mean_free_path", &wgdipole::mean_free_path, py::arg("density"),
        py::arg("detuning"),
        "Resonant-scattering mean free path for a dilute ensemble.");

  py::class_<wgdipole::KernelOptions>(m, "KernelOptions")
      .def(py::init<>())
      .def_readwrite("image_truncation_radius",
                     &wgdipole::KernelOptions::image_truncation_radius)
      .def_readwrite("damping_parameter",
                     &wgdipole::KernelOptions::damping_parameter)
      .def_readwrite("mode_evanescent_cutoff",
                     &wgdipole::KernelOptions::mode_evanescent_cutoff)
      .def_readwrite("crossover_dz", &wgdipole::KernelOptions::crossover_dz);

  m.def("free_space_dyadic", &wgdipole::free_space_dyadic,
        py::arg("separation"),
        "Normalized free-space dyadic propagator g as a function of the "
        "separation vector (in 1/k0 units).");
  m.def(
      "waveguide_dyadic",
      [](const wgdipole::Vec3& r, const wgdipole::Vec3& rp, double a, double b,
         double k, const wgdipole::KernelOptions& opts) {
        return wgdipole::waveguide_dyadic(r, rp, {a, b}, k, opts);
      },
      py::arg("r"), py::arg("rp"), py::arg("a"), py::arg("b"),
      py::arg("k") = wgdipole::k0,
      py::arg("options") = wgdipole::KernelOptions{},
      "Waveguide dyadic propagator (image route, mode route, or self term, "
      "chosen by axial separation).");

  py::class_<wgdipole::Realization>(m, "Realization")
      .def_property_readonly("positions", &positions_matrix)
      .def_property_readonly("n_atoms", &wgdipole::Realization::n_atoms)
      .def_readonly("sample_length", &wgdipole::Realization::sample_length)
      .def_readonly("seed_tag", &wgdipole::Realization::seed_tag);

  m.def(
      "generate_realization",
      [](double a, double b, double density, double length,
         std::uint64_t seed) {
        return wgdipole::generate_realization({a, b}, density, length, seed);
      },
      py::arg("a"), py::arg("b"), py::arg("density"), py::arg("length"),
      py::arg("seed"),
      "Uniform ensemble in (0,a)x(0,b)x(0,length) with the minimum pair "
      "separation enforced; deterministic in the seed.");
  m.def("realization_stream_seed", &wgdipole::realization_stream_seed,
        py::arg("master_seed"), py::arg("l_index"),
        py::arg("realization_index"));

  m.def("assemble_sigma", &wgdipole::assemble_sigma, py::arg("realization"),
        py::arg("k") = wgdipole::k0,
        py::arg("options") = wgdipole::KernelOptions{},
        "3N x 3N complex-symmetric coupling matrix of the ensemble.");
  m.def("collective_spectrum", &wgdipole::collective_spectrum,
        py::arg("sigma"),
        "(shift, rate) eigenpairs of the coupling matrix, ascending rate.");

  py::class_<wgdipole::SourceSpec>(m, "SourceSpec")
      .def(py::init<>())
      .def_readwrite("position", &wgdipole::SourceSpec::position)
      .def_readwrite("orientation", &wgdipole::SourceSpec::orientation)
      .def_readwrite("detuning", &wgdipole::SourceSpec::detuning);

  m.def("source_coupling_vector", &wgdipole::source_coupling_vector,
        py::arg("realization"), py::arg("source"), py::arg("k") = wgdipole::k0,
        py::arg("options") = wgdipole::KernelOptions{});
  m.def(
      "stationary_amplitudes",
      [](const Eigen::MatrixXcd& sigma, const Eigen::VectorXcd& v,
         double detuning) {
        return wgdipole::stationary_amplitudes(sigma, v, detuning);
      },
      py::arg("sigma"), py::arg("v"), py::arg("detuning"),
      "Solves [detuning*I - sigma] b = v.");

  py::class_<wgdipole::DetectorGrid>(m, "DetectorGrid")
      .def(py::init<>())
      .def_readwrite("z_offset", &wgdipole::DetectorGrid::z_offset)
      .def_readwrite("nx", &wgdipole::DetectorGrid::nx)
      .def_readwrite("ny", &wgdipole::DetectorGrid::ny);

  m.def("transmission_one", &wgdipole::transmission_one,
        py::arg("realization"), py::arg("source"),
        py::arg("detector") = wgdipole::DetectorGrid{},
        py::arg("k") = wgdipole::k0,
        py::arg("options") = wgdipole::KernelOptions{},
        "Transmission T = I/I0 of one configuration.");

  py::class_<wgdipole::CurvePoint>(m, "CurvePoint")
      .def_readonly("length", &wgdipole::CurvePoint::length)
      .def_readonly("t_mean", &wgdipole::CurvePoint::t_mean)
      .def_readonly("t_stderr", &wgdipole::CurvePoint::t_stderr)
      .def_readonly("t_geomean", &wgdipole::CurvePoint::t_geomean)
      .def_readonly("n_realizations", &wgdipole::CurvePoint::n_realizations)
      .def_readonly("n_failed", &wgdipole::CurvePoint::n_failed)
      .def_readonly("valid", &wgdipole::CurvePoint::valid);

  py::class_<wgdipole::SimulationConfig>(m, "SimulationConfig")
      .def(py::init<>())
      .def_readwrite("geom", &wgdipole::SimulationConfig::geom)
      .def_readwrite("density", &wgdipole::SimulationConfig::density)
      .def_readwrite("detuning", &wgdipole::SimulationConfig::detuning)
      .def_readwrite("lengths", &wgdipole::SimulationConfig::lengths)
      .def_readwrite("realizations_per_l",
                     &wgdipole::SimulationConfig::realizations_per_l)
      .def_readwrite("master_seed", &wgdipole::SimulationConfig::master_seed)
      .def_readwrite("source", &wgdipole::SimulationConfig::source)
      .def_readwrite("source_xy_explicit",
                     &wgdipole::SimulationConfig::source_xy_explicit)
      .def_readwrite("detector", &wgdipole::SimulationConfig::detector)
      .def_readwrite("kernel", &wgdipole::SimulationConfig::kernel);

  m.def(
      "scan_curve",
      [](const wgdipole::SimulationConfig& config) {
        return wgdipole::scan_curve(config).points;
      },
      py::arg("config"),
      "Deterministic T(L) scan; returns the list of per-length aggregates.");

  py::class_<wgdipole::ScalingFit>(m, "ScalingFit")
      .def_property_readonly("model",
                             [](const wgdipole::ScalingFit& fit) {
                               return fit.model ==
                                              wgdipole::ScalingModel::exponential
                                          ? "exponential"
                                          : "hyperbolic";
                             })
      .def_readonly("p0", &wgdipole::ScalingFit::p0)
      .def_readonly("p1", &wgdipole::ScalingFit::p1)
      .def_readonly("p0_err", &wgdipole::ScalingFit::p0_err)
      .def_readonly("p1_err", &wgdipole::ScalingFit::p1_err)
      .def_readonly("residual_sum", &wgdipole::ScalingFit::residual_sum)
      .def_readonly("n_points", &wgdipole::ScalingFit::n_points)
      .def("residual_per_dof", &wgdipole::ScalingFit::residual_per_dof)
      .def("evaluate", &wgdipole::ScalingFit::evaluate, py::arg("length"));

  const double inf = std::numeric_limits<double>::infinity();
  m.def(
      "fit_exponential",
      [](const std::vector<double>& lengths, const std::vector<double>& t_mean,
         const std::vector<double>& t_stderr, double l_min, double l_max) {
        return wgdipole::fit_exponential(
            curve_from_columns(lengths, t_mean, t_stderr), l_min, l_max);
      },
      py::arg("lengths"), py::arg("t_mean"), py::arg("t_stderr"),
      py::arg("l_min") = 0.0, py::arg("l_max") = inf,
      "Weighted fit of T = T0 exp(-L / l_loc); p0 = T0, p1 = l_loc.");
  m.def(
      "fit_hyperbolic",
      [](const std::vector<double>& lengths, const std::vector<double>& t_mean,
         const std::vector<double>& t_stderr, double l_min, double l_max) {
        return wgdipole::fit_hyperbolic(
            curve_from_columns(lengths, t_mean, t_stderr), l_min, l_max);
      },
      py::arg("lengths"), py::arg("t_mean"), py::arg("t_stderr"),
      py::arg("l_min") = 0.0, py::arg("l_max") = inf,
      "Weighted fit of T = c / (L + L0); p0 = c, p1 = L0.");
  m.def(
      "select_model",
      [](const wgdipole::ScalingFit& fit_exp,
         const wgdipole::ScalingFit& fit_hyp) {
        return wgdipole::regime_name(wgdipole::select_model(fit_exp, fit_hyp));
      },
      py::arg("fit_exp"), py::arg("fit_hyp"),
      "'localization', 'diffusive', or 'ambiguous' by residual-per-dof "
      "comparison.");

  m.attr("min_pair_separation") = wgdipole::min_pair_separation;
  m.attr("default_fit_window_scale") = 2.0;
  m.def("default_fit_window_min", &wgdipole::default_fit_window_min,
        py::arg("density"), py::arg("detuning"),
        "Shortest sample length admitted to the scaling fits (two mean free "
        "paths).");
#ifdef WGDIPOLE_VERSION
  m.attr("__version__") = WGDIPOLE_VERSION;
#else
  m.attr("__version__") = "0.0.0";
#endif
}
