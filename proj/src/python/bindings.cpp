#include "zeno/drive.hpp"
#include "zeno/environment.hpp"
#include "zeno/filters.hpp"
#include "zeno/rates.hpp"
#include "zeno/specfun.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace zeno;

namespace {

Temperature temperature_from(std::optional<double> beta) {
  if (beta) return FiniteTemperature{*beta};
  return ZeroTemperature{};
}

// Python-side errors: ConvergenceError -> RuntimeError carrying the estimate.
void translate(std::exception_ptr p) {
  try {
    if (p) std::rethrow_exception(p);
  } catch (const ConvergenceError& e) {
    PyErr_SetString(PyExc_RuntimeError,
                    (std::string(e.what()) + " (estimate " + std::to_string(e.estimate()) + ")").c_str());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Filter functions and Zeno/anti-Zeno decay rates for driven two-level systems";
  py::register_exception_translator(&translate);

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init([](double abs_tol, double rel_tol, int max_subdivisions) {
             QuadratureConfig c{abs_tol, rel_tol, max_subdivisions};
             c.validate();
             return c;
           }),
           py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-8,
           py::arg("max_subdivisions") = 4096)
      .def_readonly("abs_tol", &QuadratureConfig::abs_tol)
      .def_readonly("rel_tol", &QuadratureConfig::rel_tol)
      .def_readonly("max_subdivisions", &QuadratureConfig::max_subdivisions);

  py::class_<AngleProfile>(m, "AngleProfile")
      .def(py::init<>())
      .def_static("constant", &AngleProfile::constant, py::arg("value"))
      .def_static("linear", &AngleProfile::linear, py::arg("rate"))
      .def_static("sinusoid", &AngleProfile::sinusoid, py::arg("amplitude"), py::arg("frequency"))
      .def_static("cosine", &AngleProfile::cosine, py::arg("amplitude"), py::arg("frequency"))
      .def_static("saturating_exp", &AngleProfile::saturating_exp, py::arg("amplitude"),
                  py::arg("rate"))
      .def("__add__", &AngleProfile::operator+)
      .def("__call__", &AngleProfile::value, py::arg("t"))
      .def("derivative", &AngleProfile::derivative, py::arg("t"))
      .def("integral", &AngleProfile::integral, py::arg("t"))
      .def("__repr__", [](const AngleProfile& p) { return "AngleProfile(" + p.describe() + ")"; });

  py::class_<EulerDrive>(m, "EulerDrive")
      .def(py::init<AngleProfile, AngleProfile, AngleProfile>(), py::arg("alpha"),
           py::arg("beta") = AngleProfile(), py::arg("gamma") = AngleProfile())
      .def_static("undriven", &EulerDrive::undriven, py::arg("eps0") = 1.0)
      .def_property_readonly("alpha", &EulerDrive::alpha)
      .def_property_readonly("beta", &EulerDrive::beta)
      .def_property_readonly("gamma", &EulerDrive::gamma)
      .def("hamiltonian", [](const EulerDrive& d, double t) {
        const auto h = hamiltonian_coefficients(d, t);
        return py::make_tuple(h.x, h.y, h.z);
      }, py::arg("t"))
      .def("__repr__", [](const EulerDrive& d) { return "EulerDrive(" + d.describe() + ")"; });

  py::class_<OhmicSpectralDensity>(m, "OhmicSpectralDensity")
      .def(py::init<double, double>(), py::arg("G"), py::arg("omega_c"))
      .def_property_readonly("G", &OhmicSpectralDensity::coupling)
      .def_property_readonly("omega_c", &OhmicSpectralDensity::cutoff)
      .def("__call__", &OhmicSpectralDensity::operator(), py::arg("omega"));

  m.def("bessel_j", &bessel_j, py::arg("n"), py::arg("x"));

  m.def("q_rwa", &q_rwa, py::arg("drive"), py::arg("omega"), py::arg("tau"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("q_full", &q_full, py::arg("drive"), py::arg("omega"), py::arg("tau"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("q_large_spin", &q_large_spin, py::arg("drive"), py::arg("omega"), py::arg("tau"),
        py::arg("n_spins"), py::arg("cfg") = QuadratureConfig{});
  m.def("q_dephasing", &q_dephasing, py::arg("alpha_tilde"), py::arg("beta"),
        py::arg("gamma_tilde"), py::arg("omega"), py::arg("tau"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("q_dephasing_closed", &q_dephasing_closed, py::arg("omega"), py::arg("tau"));
  m.def(
      "q_rwa_sinusoidal_series",
      [](double eps0, double V0, double Omega, double omega, double tau, std::optional<int> order) {
        const auto r = q_rwa_sinusoidal_series(eps0, V0, Omega, omega, tau, order);
        return py::dict(py::arg("value") = r.value, py::arg("order") = r.order,
                        py::arg("tail_bound") = r.tail_bound,
                        py::arg("truncation_warning") = r.truncation_warning);
      },
      py::arg("eps0"), py::arg("V0"), py::arg("Omega"), py::arg("omega"), py::arg("tau"),
      py::arg("order") = std::nullopt);

  auto model_of = [](const std::string& kind, const EulerDrive& drive, int n_spins) -> FilterModel {
    if (kind == "rwa") return PopulationDecayRWA{drive};
    if (kind == "full") return PopulationDecayFull{drive};
    if (kind == "large_spin") return LargeSpin{drive, n_spins};
    throw py::value_error("model must be 'rwa', 'full' or 'large_spin'");
  };
  m.def(
      "decay_rate_weak",
      [model_of](const EulerDrive& drive, const OhmicSpectralDensity& sd, double tau,
                 const std::string& model, int n_spins, const std::string& method,
                 const QuadratureConfig& cfg) {
        return decay_rate_weak(model_of(model, drive, n_spins), sd, tau, cfg,
                               weak_rate_method_from_string(method));
      },
      py::arg("drive"), py::arg("sd"), py::arg("tau"), py::arg("model") = "rwa",
      py::arg("n_spins") = 1, py::arg("method") = "time_domain",
      py::arg("cfg") = QuadratureConfig{});
  m.def(
      "decay_rate_dephasing",
      [](const AngleProfile& alpha_tilde, const AngleProfile& beta,
         const AngleProfile& gamma_tilde, const OhmicSpectralDensity& sd, double tau,
         const QuadratureConfig& cfg) {
        return decay_rate_weak(Dephasing{alpha_tilde, beta, gamma_tilde}, sd, tau, cfg);
      },
      py::arg("alpha_tilde"), py::arg("beta"), py::arg("gamma_tilde"), py::arg("sd"),
      py::arg("tau"), py::arg("cfg") = QuadratureConfig{});
  m.def(
      "decay_rate_polaron",
      [](double delta, const AngleProfile& epsilon, const OhmicSpectralDensity& sd, double tau,
         std::optional<double> beta, const QuadratureConfig& cfg) {
        return decay_rate_polaron(delta, epsilon, sd, temperature_from(beta), tau, cfg);
      },
      py::arg("delta"), py::arg("epsilon"), py::arg("sd"), py::arg("tau"),
      py::arg("inverse_temperature") = std::nullopt, py::arg("cfg") = QuadratureConfig{});

  m.def("phi_i", &phi_i, py::arg("sd"), py::arg("t"));
  m.def(
      "phi_r",
      [](const OhmicSpectralDensity& sd, double t, std::optional<double> beta) {
        return phi_r(sd, t, temperature_from(beta));
      },
      py::arg("sd"), py::arg("t"), py::arg("inverse_temperature") = std::nullopt);

  m.def(
      "survival",
      [](double gamma, double tau, int measurements) {
        const auto s = survival(gamma, tau, measurements);
        return py::make_tuple(s.single, s.total, s.negative_rate);
      },
      py::arg("gamma"), py::arg("tau"), py::arg("measurements") = 1);

  m.def(
      "classify_regimes",
      [](const std::vector<double>& tau, const std::vector<double>& gamma, double dead_band) {
        const auto seg = classify_regimes(tau, gamma, dead_band);
        py::list segments;
        for (const auto& s : seg.segments)
          segments.append(py::make_tuple(s.tau_begin, s.tau_end, to_string(s.regime)));
        return py::dict(py::arg("segments") = segments, py::arg("crossovers") = seg.crossovers);
      },
      py::arg("tau"), py::arg("gamma"), py::arg("dead_band") = 1e-6);
}
