#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qioms/config.hpp"
#include "qioms/dataset.hpp"
#include "qioms/delay.hpp"
#include "qioms/entanglement.hpp"
#include "qioms/errors.hpp"
#include "qioms/figures.hpp"
#include "qioms/illumination.hpp"
#include "qioms/version.hpp"

namespace py = pybind11;
using namespace qioms;

namespace {

py::dict dataset_to_dict(const Dataset& ds) {
  py::dict meta;
  for (const auto& [key, value] : ds.metadata) meta[py::str(key)] = value;
  py::dict out;
  out["columns"] = ds.columns;
  out["rows"] = ds.rows;
  out["metadata"] = meta;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qioms, m) {
  m.doc() = "Optomechanical microwave quantum illumination model";
  m.attr("__version__") = kVersion;

  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedConfigurationError>(m, "UnsupportedConfigurationError",
                                                        PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double kappa, double gamma, double delta, double g1, double g2, double n_b,
                       double n_plus_in, double n_minus_in) {
             return SystemParams{kappa, gamma, delta, g1, g2, n_b, n_plus_in, n_minus_in};
           }),
           py::arg("kappa") = 1.0, py::arg("gamma") = 1e-3, py::arg("delta") = 0.0,
           py::arg("g1") = 0.0, py::arg("g2") = 0.0, py::arg("n_b") = 0.0,
           py::arg("n_plus_in") = 0.0, py::arg("n_minus_in") = 0.0)
      .def_readwrite("kappa", &SystemParams::kappa)
      .def_readwrite("gamma", &SystemParams::gamma)
      .def_readwrite("delta", &SystemParams::delta)
      .def_readwrite("g1", &SystemParams::g1)
      .def_readwrite("g2", &SystemParams::g2)
      .def_readwrite("n_b", &SystemParams::n_b)
      .def_readwrite("n_plus_in", &SystemParams::n_plus_in)
      .def_readwrite("n_minus_in", &SystemParams::n_minus_in)
      .def("cooperativity1", &SystemParams::cooperativity1)
      .def("cooperativity2", &SystemParams::cooperativity2)
      .def("__repr__", [](const SystemParams& p) {
        std::ostringstream os;
        os << "SystemParams(kappa=" << p.kappa << ", gamma=" << p.gamma << ", delta=" << p.delta
           << ", g1=" << p.g1 << ", g2=" << p.g2 << ", n_b=" << p.n_b << ")";
        return os.str();
      });

  py::class_<IlluminationParams>(m, "IlluminationParams")
      .def(py::init([](double eta, double n_B, double m_pairs) {
             return IlluminationParams{eta, n_B, m_pairs};
           }),
           py::arg("eta") = 0.0, py::arg("n_B") = 0.0, py::arg("m_pairs") = 1.0)
      .def_readwrite("eta", &IlluminationParams::eta)
      .def_readwrite("n_B", &IlluminationParams::n_background)
      .def_readwrite("m_pairs", &IlluminationParams::m_pairs);

  py::class_<FilterSpec>(m, "FilterSpec")
      .def(py::init([](double sigma, double t_delay) { return FilterSpec{sigma, t_delay}; }),
           py::arg("sigma") = 0.0, py::arg("t_delay") = 0.0)
      .def_readwrite("sigma", &FilterSpec::sigma)
      .def_readwrite("t_delay", &FilterSpec::t_delay);

  py::class_<ScanSpec>(m, "ScanSpec")
      .def(py::init([](double t_min, double t_max, int points) {
             return ScanSpec{t_min, t_max, points};
           }),
           py::arg("t_min") = 0.0, py::arg("t_max") = 20.0, py::arg("points") = 2000)
      .def_readwrite("t_min", &ScanSpec::t_min)
      .def_readwrite("t_max", &ScanSpec::t_max)
      .def_readwrite("points", &ScanSpec::points);

  py::class_<ScatteringCoefficients>(m, "ScatteringCoefficients")
      .def_readonly("a_plus", &ScatteringCoefficients::a_plus)
      .def_readonly("b", &ScatteringCoefficients::b)
      .def_readonly("c_plus", &ScatteringCoefficients::c_plus)
      .def_readonly("a_minus", &ScatteringCoefficients::a_minus)
      .def_readonly("c_minus", &ScatteringCoefficients::c_minus)
      .def_readonly("omega", &ScatteringCoefficients::omega);

  py::class_<SpectralPoint>(m, "SpectralPoint")
      .def_readonly("omega", &SpectralPoint::omega)
      .def_readonly("n_plus", &SpectralPoint::n_plus)
      .def_readonly("n_minus", &SpectralPoint::n_minus)
      .def_readonly("x", &SpectralPoint::x);

  py::class_<CovarianceMatrix>(m, "CovarianceMatrix")
      .def(py::init([](double v11, double v33, double v13, double v14) {
             return CovarianceMatrix{v11, v33, v13, v14};
           }),
           py::arg("v11") = 0.0, py::arg("v33") = 0.0, py::arg("v13") = 0.0,
           py::arg("v14") = 0.0)
      .def_readwrite("v11", &CovarianceMatrix::v11)
      .def_readwrite("v33", &CovarianceMatrix::v33)
      .def_readwrite("v13", &CovarianceMatrix::v13)
      .def_readwrite("v14", &CovarianceMatrix::v14)
      .def("to_matrix", &CovarianceMatrix::to_matrix)
      .def("symplectic_eigenvalues", &CovarianceMatrix::symplectic_eigenvalues)
      .def("is_physical", &CovarianceMatrix::is_physical, py::arg("slack") = 1e-9);

  py::class_<EntanglementPoint>(m, "EntanglementPoint")
      .def_readonly("omega", &EntanglementPoint::omega)
      .def_readonly("e_n", &EntanglementPoint::e_n)
      .def_readonly("ratio", &EntanglementPoint::ratio);

  py::enum_<Hypothesis>(m, "Hypothesis")
      .value("TargetAbsent", Hypothesis::TargetAbsent)
      .value("TargetPresent", Hypothesis::TargetPresent);

  py::class_<IlluminationReport>(m, "IlluminationReport")
      .def_readonly("snr_qi", &IlluminationReport::snr_qi)
      .def_readonly("snr_coherent", &IlluminationReport::snr_coherent)
      .def_readonly("f_merit", &IlluminationReport::f_merit)
      .def_readonly("p_qi", &IlluminationReport::p_qi)
      .def_readonly("p_coherent", &IlluminationReport::p_coherent)
      .def_readonly("diagnostic", &IlluminationReport::diagnostic);

  py::class_<GridOptimum>(m, "GridOptimum")
      .def_readonly("argmax", &GridOptimum::argmax)
      .def_readonly("value", &GridOptimum::value)
      .def_readonly("at_boundary", &GridOptimum::at_boundary);

  py::class_<DelayResult>(m, "DelayResult")
      .def_readonly("t_analytic", &DelayResult::t_analytic)
      .def_readonly("t_numeric", &DelayResult::t_numeric)
      .def_readonly("snr_at_analytic", &DelayResult::snr_at_analytic)
      .def_readonly("snr_at_numeric", &DelayResult::snr_at_numeric)
      .def_readonly("snr_at_zero", &DelayResult::snr_at_zero)
      .def_readonly("numeric_at_boundary", &DelayResult::numeric_at_boundary);

  m.def("planck_occupation", &planck_occupation, py::arg("angular_frequency"),
        py::arg("temperature"));
  m.def("coupling_from_cooperativity", &coupling_from_cooperativity, py::arg("c"),
        py::arg("kappa"), py::arg("gamma"));
  m.def("is_dynamically_stable", &is_dynamically_stable, py::arg("params"));
  m.def(
      "validate",
      [](const SystemParams& p) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& d : validate(p)) {
          out.emplace_back(d.severity == Severity::Error ? "error" : "warning", d.field,
                           d.message);
        }
        return out;
      },
      py::arg("params"));

  m.def("scattering_coefficients", &scattering_coefficients, py::arg("params"),
        py::arg("omega"));
  m.def("output_spectra", &output_spectra, py::arg("params"), py::arg("omega"));
  m.def("closed_form_spectra", &closed_form_spectra, py::arg("params"), py::arg("omega"));

  m.def("filter_amplitude",
        [](const FilterSpec& spec, const std::string& side, double omega) {
          return filter_amplitude(
              spec, side == "microwave" ? FilterSide::Microwave : FilterSide::Optical, omega);
        },
        py::arg("spec"), py::arg("side"), py::arg("omega"));
  m.def("project_covariance", &project_covariance, py::arg("params"), py::arg("spec"),
        py::arg("tol") = kDefaultQuadTol, py::call_guard<py::gil_scoped_release>());

  m.def("pt_symplectic_eigenvalue", &pt_symplectic_eigenvalue, py::arg("v"));
  m.def("log_negativity", &log_negativity, py::arg("v"));
  m.def(
      "en_spectrum",
      [](const SystemParams& p, const std::vector<double>& omegas) {
        return en_spectrum(p, omegas);
      },
      py::arg("params"), py::arg("omegas"));

  m.def("receiver_output_moment", &receiver_output_moment, py::arg("params"), py::arg("illum"),
        py::arg("spec"), py::arg("hyp"), py::arg("tol") = kDefaultQuadTol);
  m.def("mean_photon_difference", &mean_photon_difference, py::arg("params"), py::arg("illum"),
        py::arg("spec"), py::arg("hyp"), py::arg("tol") = kDefaultQuadTol);
  m.def("snr_qi", &snr_qi, py::arg("params"), py::arg("illum"), py::arg("spec"),
        py::arg("tol") = kDefaultQuadTol, py::call_guard<py::gil_scoped_release>());
  m.def("snr_coherent", &snr_coherent, py::arg("illum"), py::arg("v11"));
  m.def("error_probability", &error_probability, py::arg("snr"));
  m.def("figure_of_merit", &figure_of_merit, py::arg("params"), py::arg("illum"), py::arg("spec"),
        py::arg("tol") = kDefaultQuadTol, py::call_guard<py::gil_scoped_release>());

  m.def("optimal_delay_analytic", &optimal_delay_analytic, py::arg("params"));
  m.def("optimal_delay_numeric", &optimal_delay_numeric, py::arg("params"), py::arg("illum"),
        py::arg("sigma"), py::arg("scan") = ScanSpec{}, py::arg("tol") = kDefaultQuadTol,
        py::call_guard<py::gil_scoped_release>());
  m.def("phase_derivative_check", &phase_derivative_check, py::arg("params"));
  m.def("delay_report", &delay_report, py::arg("params"), py::arg("illum"), py::arg("sigma"),
        py::arg("scan") = ScanSpec{}, py::arg("tol") = kDefaultQuadTol,
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_figure",
      [](const std::string& id, const std::string& overrides_json) {
        Dataset ds;
        {
          py::gil_scoped_release release;
          const auto overrides = overrides_json.empty()
                                     ? nlohmann::json::object()
                                     : nlohmann::json::parse(overrides_json);
          ds = run_figure(id, overrides);
        }
        return dataset_to_dict(ds);
      },
      py::arg("id"), py::arg("overrides_json") = std::string(),
      "Reproduce a canned dataset; overrides_json is a config patch document.");
  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        Dataset ds;
        {
          py::gil_scoped_release release;
          const auto doc =
              merge_config(default_config_json(), nlohmann::json::parse(config_json));
          ds = run_sweep(RunConfig::from_json(doc));
        }
        return dataset_to_dict(ds);
      },
      py::arg("config_json"));
}
