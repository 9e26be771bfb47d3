#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spinmode/analysis.hpp"
#include "spinmode/experiments.hpp"
#include "spinmode/hilbert.hpp"
#include "spinmode/models.hpp"
#include "spinmode/renorm.hpp"
#include "spinmode/scenario.hpp"
#include "spinmode/tcl.hpp"
#include "spinmode/version.hpp"

namespace py = pybind11;
using namespace spinmode;

PYBIND11_MODULE(_core, m) {
  m.doc() = "exchange-model renormalization toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      if (e.kind == ScenarioError::Kind::schema)
        PyErr_SetString(PyExc_ValueError, e.what());
      else
        PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::enum_<Model>(m, "Model")
      .value("jc", Model::jc)
      .value("ti_full", Model::ti_full)
      .value("ti_ld", Model::ti_ld)
      .value("ti_rsb", Model::ti_rsb);
  py::enum_<Observable>(m, "Observable")
      .value("sigma_x", Observable::sigma_x)
      .value("sigma_y", Observable::sigma_y)
      .value("sigma_z", Observable::sigma_z);
  py::enum_<Frame>(m, "Frame").value("lab", Frame::lab).value("rotating", Frame::rotating);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("omega", &ModelParams::omega)
      .def_readwrite("omega_m", &ModelParams::omega_m)
      .def_readwrite("g", &ModelParams::g)
      .def_readwrite("omega_star", &ModelParams::omega_star)
      .def_readwrite("omega_rabi", &ModelParams::omega_rabi)
      .def_readwrite("eta", &ModelParams::eta)
      .def_readwrite("nbar", &ModelParams::nbar)
      .def_readwrite("n_max", &ModelParams::n_max)
      .def_property("beta", &ModelParams::beta, &ModelParams::set_beta)
      .def("detuning", &ModelParams::detuning)
      .def("validate_exchange", &ModelParams::validate_exchange)
      .def("validate_ion", &ModelParams::validate_ion);

  m.def("map_ti_to_jc", &map_ti_to_jc);
  m.def("coupled_hamiltonian", &coupled_hamiltonian);
  m.def("bare_hamiltonian", &bare_hamiltonian);
  m.def("thermal_mode_state", &thermal_mode_state);
  m.def("displacement_exponential", &displacement_exponential, py::arg("eta"),
        py::arg("n_max"), py::arg("pad") = 10);

  m.def("rabi_frequency", &rabi_frequency);
  m.def("period", &period);
  m.def("coeff_c", &coeff_c);
  m.def("coeff_c_dot", &coeff_c_dot);
  m.def("gamma_thermal", &gamma_thermal);
  m.def("gamma_thermal_derivative", &gamma_thermal_derivative);
  m.def("shift_thermal", &shift_thermal);
  m.def("shift_vacuum", &shift_vacuum);
  m.def("average_shift_vacuum", &average_shift_vacuum);
  m.def("lamb_shift", &lamb_shift);

  py::class_<DressedEnergies>(m, "DressedEnergies")
      .def_readonly("upper", &DressedEnergies::upper)
      .def_readonly("lower", &DressedEnergies::lower);
  m.def("dressed_energies", &dressed_energies);

  py::class_<ShiftProfile>(m, "ShiftProfile")
      .def_readonly("times", &ShiftProfile::times)
      .def_readonly("shift", &ShiftProfile::shift)
      .def_readonly("singular_times", &ShiftProfile::singular_times);
  m.def("shift_profile", &shift_profile);

  py::class_<DynamicalMap>(m, "DynamicalMap")
      .def_readonly("time", &DynamicalMap::time)
      .def_readonly("matrix", &DynamicalMap::matrix);
  py::class_<MapReconstructor>(m, "MapReconstructor")
      .def(py::init<const Matrix&, const Matrix&>(), py::arg("h_total"), py::arg("rho_mode"))
      .def("map_at", &MapReconstructor::map_at)
      .def("uniform_grid", &MapReconstructor::uniform_grid);
  m.def("reconstruct_map", &reconstruct_map);
  m.def("generator", &generator, py::arg("maps"), py::arg("index"),
        py::arg("max_condition") = 1e8);

  py::class_<GeneratorSplit>(m, "GeneratorSplit")
      .def_readonly("time", &GeneratorSplit::time)
      .def_readonly("field", &GeneratorSplit::field)
      .def_readonly("hamiltonian", &GeneratorSplit::hamiltonian)
      .def_readonly("kossakowski", &GeneratorSplit::kossakowski)
      .def_readonly("rates", &GeneratorSplit::rates)
      .def_readonly("jumps", &GeneratorSplit::jumps)
      .def("omega_tilde", &GeneratorSplit::omega_tilde);
  m.def("minimal_dissipation_split", &minimal_dissipation_split, py::arg("g"),
        py::arg("time") = 0.0);
  m.def("bloch_generator", &bloch_generator);

  py::class_<JcForm>(m, "JcForm")
      .def(py::init<>())
      .def_readwrite("omega_tilde", &JcForm::omega_tilde)
      .def_readwrite("gamma_z", &JcForm::gamma_z)
      .def_readwrite("gamma_plus", &JcForm::gamma_plus)
      .def_readwrite("gamma_minus", &JcForm::gamma_minus)
      .def_readwrite("residual", &JcForm::residual);
  m.def("assemble_jc_generator", &assemble_jc_generator);
  m.def("jc_coefficients", &jc_coefficients);

  py::class_<LarmorProfile>(m, "LarmorProfile")
      .def_readonly("times", &LarmorProfile::times)
      .def_readonly("omega", &LarmorProfile::omega)
      .def_readonly("singular_times", &LarmorProfile::singular_times);
  m.def("larmor_frequency_exact", &larmor_frequency_exact, py::arg("maps"),
        py::arg("max_condition") = 1e8);

  py::class_<MeasurementRecord>(m, "MeasurementRecord")
      .def_readonly("setting", &MeasurementRecord::setting)
      .def_readonly("repetitions", &MeasurementRecord::repetitions)
      .def_readonly("up_count", &MeasurementRecord::up_count)
      .def_readonly("estimate", &MeasurementRecord::estimate);
  m.def("sample_projective", &sample_projective);
  m.def("measured_up_probability", &measured_up_probability);
  m.def("spin_rotation", &spin_rotation);

  py::class_<PhaseScanResult>(m, "PhaseScanResult")
      .def_readonly("phases", &PhaseScanResult::phases)
      .def_readonly("up_probability", &PhaseScanResult::up_probability)
      .def_readonly("records", &PhaseScanResult::records)
      .def_readonly("arm_duration", &PhaseScanResult::arm_duration)
      .def_readonly("max_tail", &PhaseScanResult::max_tail);
  m.def("ramsey_time_average", &ramsey_time_average, py::arg("params"), py::arg("model"),
        py::arg("phases"), py::arg("repetitions") = 0, py::arg("seed") = 0);

  py::class_<ObservableSeries>(m, "ObservableSeries")
      .def_readonly("observable", &ObservableSeries::observable)
      .def_readonly("exact", &ObservableSeries::exact)
      .def_readonly("records", &ObservableSeries::records);
  py::class_<TimeScanResult>(m, "TimeScanResult")
      .def_readonly("times", &TimeScanResult::times)
      .def_readonly("series", &TimeScanResult::series)
      .def_readonly("max_tail", &TimeScanResult::max_tail);
  m.def("ramsey_time_resolved", &ramsey_time_resolved, py::arg("params"), py::arg("model"),
        py::arg("times"), py::arg("observables"), py::arg("repetitions") = 0,
        py::arg("seed") = 0, py::arg("frame") = Frame::lab, py::arg("stream_offset") = 0);

  py::class_<CosineFit>(m, "CosineFit")
      .def_readonly("contrast", &CosineFit::contrast)
      .def_readonly("phase", &CosineFit::phase)
      .def_readonly("rms_residual", &CosineFit::rms_residual);
  m.def("fit_negative_cosine", &fit_negative_cosine);
  m.def("average_shift_from_phase", &average_shift_from_phase);

  py::class_<LarmorEstimate>(m, "LarmorEstimate")
      .def_readonly("crossings", &LarmorEstimate::crossings)
      .def_readonly("times", &LarmorEstimate::times)
      .def_readonly("omega", &LarmorEstimate::omega);
  m.def(
      "larmor_zero_crossings",
      [](const std::vector<double>& times, const std::vector<double>& values,
         double omega_hint) {
        return larmor_zero_crossings(TimeSeries{times, values}, omega_hint);
      },
      py::arg("times"), py::arg("values"), py::arg("omega_hint"));

  py::class_<ModelComparison>(m, "ModelComparison")
      .def_readonly("times", &ModelComparison::times)
      .def_readonly("jc", &ModelComparison::jc)
      .def_readonly("ti", &ModelComparison::ti)
      .def_readonly("difference", &ModelComparison::difference)
      .def_readonly("distance", &ModelComparison::distance)
      .def_readonly("max_distance", &ModelComparison::max_distance);
  m.def("compare_models", &compare_models, py::arg("params"), py::arg("variant"),
        py::arg("duration"), py::arg("steps"));

  m.def(
      "run_scenario_file",
      [](const std::string& file, int workers, std::optional<std::uint64_t> seed,
         std::optional<std::string> out_dir) {
        RunOptions options;
        options.workers = workers;
        options.seed_override = seed;
        options.out_dir = std::move(out_dir);
        RunOutcome outcome = run_scenario_file(file, options);
        py::dict result;
        result["files"] = outcome.files;
        result["summary"] = outcome.summary;
        return result;
      },
      py::arg("file"), py::arg("workers") = 1, py::arg("seed") = py::none(),
      py::arg("out_dir") = py::none());
  m.def("validate_scenario_file",
        [](const std::string& file) { return to_string(load_scenario(file).protocol); });
}
