// Python surface for the simulator: device presets, drive patterns, the
// experiment protocols, and the velocity reductions.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "floq/bessel.hpp"
#include "floq/pipeline.hpp"
#include "floq/protocols.hpp"

namespace py = pybind11;
using namespace floq;

namespace {

Butterfly butterfly_from(const std::string& s) {
    if (s == "z" || s == "Z") return Butterfly::Z;
    if (s == "x" || s == "X") return Butterfly::X;
    throw std::invalid_argument("butterfly must be 'z' or 'x'");
}

py::dict fit_dict(const FitResult& fit) {
    py::dict d;
    d["params"] = fit.params;
    d["covariance"] = fit.covariance;
    d["converged"] = fit.converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Floquet-engineered chain simulator";

    m.def("bessel_j0", &bessel_j0, py::arg("x"));

    py::class_<DeviceSpec>(m, "DeviceSpec")
        .def_static("paper_10q", &DeviceSpec::paper_10q, py::arg("levels") = 2)
        .def_static("uniform", &DeviceSpec::uniform, py::arg("n"), py::arg("g"),
                    py::arg("levels") = 2)
        .def_readonly("n_sites", &DeviceSpec::n_sites)
        .def_readonly("levels", &DeviceSpec::levels)
        .def_readonly("nn_couplings", &DeviceSpec::nn_couplings)
        .def_readonly("nnn_couplings", &DeviceSpec::nnn_couplings)
        .def_readonly("anharmonicities", &DeviceSpec::anharmonicities)
        .def("without_nnn", &DeviceSpec::without_nnn);

    py::class_<DrivePattern>(m, "DrivePattern")
        .def_static("none", &DrivePattern::none, py::arg("n"), py::arg("nu") = 120.0)
        .def_static("staggered_odd", &DrivePattern::staggered_odd, py::arg("n"),
                    py::arg("eps"), py::arg("nu") = 120.0)
        .def_static("on_sites", &DrivePattern::on_sites, py::arg("n"), py::arg("sites"),
                    py::arg("eps"), py::arg("nu") = 120.0)
        .def_readonly("amplitudes", &DrivePattern::amplitudes)
        .def_readonly("drive_frequency", &DrivePattern::drive_frequency);

    py::class_<ModelOptions>(m, "ModelOptions")
        .def(py::init<>())
        .def_readwrite("levels", &ModelOptions::levels)
        .def_readwrite("lab_frame", &ModelOptions::lab_frame)
        .def_readwrite("include_nnn", &ModelOptions::include_nnn)
        .def_readwrite("include_zz", &ModelOptions::include_zz)
        .def_readwrite("zz_strength_mhz", &ModelOptions::zz_strength_mhz)
        .def_readwrite("nu_mhz", &ModelOptions::nu_mhz)
        .def_readwrite("exact_reverse", &ModelOptions::exact_reverse)
        .def_readwrite("dt_ns", &ModelOptions::dt_ns)
        .def_readwrite("sample_dt_ns", &ModelOptions::sample_dt_ns);

    py::class_<SiteTimeSeries>(m, "SiteTimeSeries")
        .def_readonly("times_ns", &SiteTimeSeries::times_ns)
        .def_readonly("values", &SiteTimeSeries::values);

    py::class_<WalkResult>(m, "WalkResult")
        .def_readonly("populations", &WalkResult::populations)
        .def_readonly("initial", &WalkResult::initial);

    py::class_<ReversalResult>(m, "ReversalResult")
        .def_readonly("populations", &ReversalResult::populations)
        .def_readonly("echo_fidelity", &ReversalResult::echo_fidelity)
        .def_readonly("max_level2_population", &ReversalResult::max_level2_population)
        .def_readonly("half_time_ns", &ReversalResult::half_time_ns);

    py::class_<OtocGrid>(m, "OtocGrid")
        .def_readonly("times_ns", &OtocGrid::times_ns)
        .def_readonly("values", &OtocGrid::values)
        .def_readonly("valid", &OtocGrid::valid)
        .def_readonly("post_selected", &OtocGrid::post_selected);

    py::class_<SshResult>(m, "SshResult")
        .def_readonly("populations", &SshResult::populations)
        .def_readonly("edge_average", &SshResult::edge_average);

    py::class_<CouplingCurve>(m, "CouplingCurve")
        .def_readonly("eps_mhz", &CouplingCurve::eps_mhz)
        .def_readonly("geff_mhz", &CouplingCurve::geff_mhz)
        .def_readonly("confident", &CouplingCurve::confident);

    m.def("run_quantum_walk", &run_quantum_walk, py::arg("device"), py::arg("drive"),
          py::arg("initial"), py::arg("t_max_ns"), py::arg("opts") = ModelOptions{});
    m.def("run_reversed_evolution", &run_reversed_evolution, py::arg("device"),
          py::arg("eps_a_mhz"), py::arg("eps_b_mhz"), py::arg("half_time_ns"),
          py::arg("opts") = ModelOptions{});
    m.def(
        "run_otoc",
        [](const DeviceSpec& dev, double eps_a, double eps_b, const std::string& butterfly,
           const std::vector<double>& grid, const ModelOptions& opts) {
            return run_otoc(dev, eps_a, eps_b, butterfly_from(butterfly), grid, opts);
        },
        py::arg("device"), py::arg("eps_a_mhz"), py::arg("eps_b_mhz"), py::arg("butterfly"),
        py::arg("t_grid_ns"), py::arg("opts") = ModelOptions{});
    m.def("run_otoc_zz_free_fermion", &run_otoc_zz_free_fermion, py::arg("n_sites"),
          py::arg("g_mhz"), py::arg("t_grid_ns"));
    m.def("run_ssh_quench", &run_ssh_quench, py::arg("device"), py::arg("drive"),
          py::arg("t_max_ns"), py::arg("opts") = ModelOptions{});
    m.def("default_otoc_grid", &default_otoc_grid, py::arg("t_max_ns") = 250.0,
          py::arg("step_ns") = 2.0);
    m.def("rabi_coupling_sweep", &rabi_coupling_sweep, py::arg("device"), py::arg("eps_list"),
          py::arg("nu_mhz") = 120.0);
    m.def(
        "walk_velocity",
        [](const SiteTimeSeries& s, int lo, int hi) { return fit_dict(walk_velocity(s, lo, hi)); },
        py::arg("populations"), py::arg("site_lo"), py::arg("site_hi"));
    m.def(
        "otoc_velocity",
        [](const OtocGrid& g, double thr) { return fit_dict(otoc_velocity(g, thr)); },
        py::arg("grid"), py::arg("threshold") = 0.5);
}
