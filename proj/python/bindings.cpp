#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magnon_fisher/config.hpp"
#include "magnon_fisher/emit.hpp"
#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/measure.hpp"
#include "magnon_fisher/normal_modes.hpp"
#include "magnon_fisher/sweep.hpp"

namespace py = pybind11;
using namespace magnon;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady state, stability and Fisher information of the photon-magnon coupling";
  m.attr("__version__") = tool_version;

  static py::exception<Error> base_exc(m, "MagnonError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::reinterpret_borrow<py::object>(base_exc.ptr());
      py::object exc = cls(std::string("[") + e.code() + "] " + e.what());
      exc.attr("code") = e.code();
      PyErr_SetObject(base_exc.ptr(), exc.ptr());
    }
  });

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("omega_a1", &SystemParams::omega_a1)
      .def_readwrite("omega_a2", &SystemParams::omega_a2)
      .def_readwrite("omega_m", &SystemParams::omega_m)
      .def_readwrite("delta_a1", &SystemParams::delta_a1)
      .def_readwrite("delta_a2", &SystemParams::delta_a2)
      .def_readwrite("delta_m", &SystemParams::delta_m)
      .def_readwrite("gamma_a1", &SystemParams::gamma_a1)
      .def_readwrite("gamma_a2", &SystemParams::gamma_a2)
      .def_readwrite("gamma_m", &SystemParams::gamma_m)
      .def_readwrite("J", &SystemParams::J)
      .def_readwrite("g", &SystemParams::g)
      .def_readwrite("K", &SystemParams::K)
      .def_readwrite("P_l", &SystemParams::P_l)
      .def_readwrite("omega_l", &SystemParams::omega_l)
      .def_readwrite("T", &SystemParams::T)
      .def("set", [](SystemParams& p, const std::string& key, const std::string& value) {
        set_parameter(p, key, value);
      }, py::arg("key"), py::arg("value"), "Set a parameter from a string with units, e.g. '40 MHz'.")
      .def("copy", [](const SystemParams& p) { return p; });

  m.def("baseline", &baseline);
  m.def("bose_occupancy", &bose_occupancy, py::arg("omega"), py::arg("T"));
  m.def("drive_amplitude", &drive_amplitude, py::arg("P_l"), py::arg("omega_l"), py::arg("gamma_a2"));
  m.def("total_spin", &total_spin, py::arg("diameter"), py::arg("rho") = constants::rho_yig);

  py::class_<SteadyState>(m, "SteadyState")
      .def_readonly("a1_mean", &SteadyState::a1_mean)
      .def_readonly("a2_mean", &SteadyState::a2_mean)
      .def_readonly("m_mean", &SteadyState::m_mean)
      .def_readonly("m_abs2", &SteadyState::m_abs2)
      .def_readonly("delta_eff", &SteadyState::delta_eff);
  m.def("solve_steady", &solve_steady);
  m.def("steady_branches", &steady_branches);
  m.def("magnon_number_cubic", &magnon_number_cubic);

  py::class_<GaussianState>(m, "GaussianState")
      .def_readonly("mean", &GaussianState::mean)
      .def_readonly("cov", &GaussianState::cov);
  m.def("steady_gaussian_state", &steady_gaussian_state);
  m.def("build_drift", &build_drift);
  m.def("build_diffusion", &build_diffusion);
  m.def("solve_lyapunov", [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& C) {
    return solve_lyapunov_general(A, C);
  }, "Solve A X + X A^T = -C.");
  m.def("char_poly", &char_poly);
  m.def("hurwitz_determinants", &hurwitz_determinants);
  m.def("min_uncertainty_eigenvalue", &min_uncertainty_eigenvalue);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("stable", &StabilityReport::stable)
      .def_readonly("max_real_eig", &StabilityReport::max_real_eig)
      .def_readonly("hurwitz_ok", &StabilityReport::hurwitz_ok)
      .def_readonly("marginal", &StabilityReport::marginal)
      .def_readonly("hurwitz", &StabilityReport::hurwitz);
  m.def("check_stability", &check_stability);

  py::class_<Sensitivity>(m, "Sensitivity")
      .def_readonly("d_mean", &Sensitivity::d_mean)
      .def_readonly("d_cov", &Sensitivity::d_cov)
      .def_property_readonly("method", [](const Sensitivity& s) { return to_string(s.method); });
  m.def("sensitivity", [](const SystemParams& p, const std::string& method) {
    return sensitivity(p, parse_derivative_method(method));
  }, py::arg("params"), py::arg("method") = "analytic");

  m.def("fisher_report", [](const SystemParams& p, const std::string& method) {
    const auto r = fisher_report(p, parse_derivative_method(method));
    py::dict d;
    d["qfi_global"] = r.qfi_global;
    d["qfi_a1"] = r.qfi_sub[0];
    d["qfi_a2"] = r.qfi_sub[1];
    d["qfi_m"] = r.qfi_sub[2];
    d["xi_a1"] = r.ratios[0];
    d["xi_a2"] = r.ratios[1];
    d["xi_m"] = r.ratios[2];
    return d;
  }, py::arg("params"), py::arg("method") = "analytic");
  m.def("qcrb", &qcrb, py::arg("F"), py::arg("N") = 1);

  m.def("cfi", [](const SystemParams& p, const std::string& mode, const std::string& measurement,
                  const std::string& method) {
    const GaussianState st = steady_gaussian_state(p);
    const Sensitivity s = sensitivity(p, parse_derivative_method(method));
    return cfi(st, s, parse_mode(mode), parse_measurement(measurement));
  }, py::arg("params"), py::arg("mode") = "a2", py::arg("measurement") = "hom-q",
     py::arg("method") = "analytic");

  m.def("optimal_gaussian", [](const SystemParams& p, const std::string& mode) {
    const GaussianState st = steady_gaussian_state(p);
    const auto r = optimal_gaussian(st, sensitivity_analytic(p), parse_mode(mode));
    py::dict d;
    d["F"] = r.F;
    d["theta"] = r.spec.theta;
    d["r"] = r.spec.r;
    d["boundary_maximum"] = r.boundary_maximum;
    return d;
  }, py::arg("params"), py::arg("mode") = "a2");

  m.def("normal_modes", [](const SystemParams& p) {
    const SteadyState ss = solve_steady(p);
    const auto b = bogoliubov(p, ss);
    const auto h = hybrid_modes(p);
    py::dict d;
    d["E"] = b.E;
    d["alpha"] = b.alpha;
    d["beta"] = b.beta;
    d["phi"] = b.phi;
    d["omega_plus"] = h.omega_plus;
    d["omega_minus"] = h.omega_minus;
    d["G_plus"] = h.G_plus;
    d["G_minus"] = h.G_minus;
    d["f"] = h.f;
    d["h"] = h.h;
    return d;
  });

  m.def("preset_names", &preset_names);
  m.def("run_preset", [](const std::string& name, unsigned jobs, const std::string& format) {
    const auto result = run_sweep(figure_preset(name), baseline(), jobs);
    return parse_format(format) == Format::csv ? to_csv(result) : to_json(result);
  }, py::arg("name"), py::arg("jobs") = 1, py::arg("format") = "csv",
     "Run a figure preset at the baseline parameters and return the CSV or JSON text.");
}
