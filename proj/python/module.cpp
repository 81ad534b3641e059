// Python bindings for the SPDC source simulator core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <memory>
#include <optional>

#include "spdc/biphoton.hpp"
#include "spdc/counting.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/franson.hpp"
#include "spdc/multiplex.hpp"
#include "spdc/qpm.hpp"
#include "spdc/report.hpp"
#include "spdc/scenario.hpp"

namespace py = pybind11;
using namespace spdc;

PYBIND11_MODULE(_spdcsim, m) {
  m.doc() = "Quasi-phase-matched SPDC source simulator";

  py::class_<DispersionModel, std::shared_ptr<DispersionModel>>(
      m, "DispersionModel")
      .def_static("bulk_lithium_niobate_e",
                  &DispersionModel::bulk_lithium_niobate_e)
      .def_static("tabulated", &DispersionModel::tabulated,
                  py::arg("wavelengths_nm"), py::arg("indices"))
      .def_static("from_table_file", &DispersionModel::from_table_file,
                  py::arg("path"))
      .def("index", &DispersionModel::index, py::arg("wavelength_nm"))
      .def("wavevector", &DispersionModel::wavevector,
           py::arg("wavelength_nm"))
      .def("group_velocity", &DispersionModel::group_velocity,
           py::arg("wavelength_nm"))
      .def("gvd", &DispersionModel::gvd, py::arg("wavelength_nm"))
      .def("find_zero_gvd", &DispersionModel::find_zero_gvd, py::arg("lo_nm"),
           py::arg("hi_nm"))
      .def_property_readonly("min_wavelength_nm",
                             &DispersionModel::min_wavelength_nm)
      .def_property_readonly("max_wavelength_nm",
                             &DispersionModel::max_wavelength_nm);

  py::class_<PolingSpec>(m, "PolingSpec")
      .def(py::init<>())
      .def_readwrite("period_um", &PolingSpec::period_um)
      .def_readwrite("duty_cycle", &PolingSpec::duty_cycle)
      .def_readwrite("length_mm", &PolingSpec::length_mm)
      .def_readwrite("order", &PolingSpec::order);

  m.def("fourier_coefficient", &qpm::fourier_coefficient, py::arg("order"),
        py::arg("duty_cycle"));
  m.def("phase_mismatch", &qpm::phase_mismatch, py::arg("pump"),
        py::arg("signal"), py::arg("idler"), py::arg("lambda_pump_nm"),
        py::arg("lambda_signal_nm"), py::arg("lambda_idler_nm"),
        py::arg("poling"));
  m.def("solve_poling_period", &qpm::solve_poling_period, py::arg("pump"),
        py::arg("half_harmonic"), py::arg("lambda_pump_nm"), py::arg("order"));
  m.def("solve_degenerate_wavelength", &qpm::solve_degenerate_wavelength,
        py::arg("pump"), py::arg("half_harmonic"), py::arg("poling"),
        py::arg("lo_nm"), py::arg("hi_nm"));

  py::enum_<JsaMode>(m, "JsaMode")
      .value("quadratic", JsaMode::quadratic)
      .value("exact_dispersion", JsaMode::exact_dispersion);

  py::class_<SourceParams>(m, "SourceParams")
      .def(py::init<>())
      .def_readwrite("lambda_pump_nm", &SourceParams::lambda_pump_nm)
      .def_readwrite("pump_power_mw", &SourceParams::pump_power_mw)
      .def_readwrite("d33_pm_per_v", &SourceParams::d33_pm_per_v)
      .def_readwrite("overlap_alpha_sq", &SourceParams::overlap_alpha_sq)
      .def_readwrite("mode_area_um2", &SourceParams::mode_area_um2)
      .def_readwrite("length_mm", &SourceParams::length_mm)
      .def_readwrite("gvd0_fs2_per_mm", &SourceParams::gvd0_fs2_per_mm)
      .def_readwrite("n_degenerate", &SourceParams::n_degenerate)
      .def_readwrite("n_pump", &SourceParams::n_pump)
      .def_readwrite("dispersion", &SourceParams::dispersion)
      .def_property_readonly("degenerate_wavelength_nm",
                             &SourceParams::degenerate_wavelength_nm);

  m.def("jsa", &biphoton::jsa, py::arg("params"), py::arg("nu"),
        py::arg("mode") = JsaMode::quadratic);
  m.def("first_zero_nu", &biphoton::first_zero_nu, py::arg("params"));
  m.def("fwhm", &biphoton::fwhm, py::arg("params"),
        py::arg("mode") = JsaMode::quadratic);

  py::class_<BiphotonSpectrum>(m, "BiphotonSpectrum")
      .def(py::init<SourceParams, double, double, int, JsaMode>(),
           py::arg("params"), py::arg("lo_nm"), py::arg("hi_nm"),
           py::arg("samples"), py::arg("mode") = JsaMode::quadratic)
      .def_property_readonly("wavelengths_nm",
                             &BiphotonSpectrum::wavelengths_nm)
      .def_property_readonly("intensities", &BiphotonSpectrum::intensities)
      .def_property_readonly("center_nm", &BiphotonSpectrum::center_nm)
      .def("intensity_at_nu", &BiphotonSpectrum::intensity_at_nu)
      .def("intensity_at_lambda", &BiphotonSpectrum::intensity_at_lambda);

  py::class_<biphoton::PairRate>(m, "PairRate")
      .def_readonly("hz", &biphoton::PairRate::hz)
      .def_readonly("hz_per_mw", &biphoton::PairRate::hz_per_mw);
  m.def("pair_rate_closed", &biphoton::pair_rate_closed, py::arg("params"));
  m.def("pair_rate_numeric", &biphoton::pair_rate_numeric, py::arg("params"),
        py::arg("mode") = JsaMode::quadratic, py::arg("window_zeros") = 20.0);

  py::class_<biphoton::SpectrumSample>(m, "SpectrumSample")
      .def(py::init<double, double, double>(), py::arg("lambda_nm"),
           py::arg("counts"), py::arg("error"))
      .def_readwrite("lambda_nm", &biphoton::SpectrumSample::lambda_nm)
      .def_readwrite("counts", &biphoton::SpectrumSample::counts)
      .def_readwrite("error", &biphoton::SpectrumSample::error);
  py::class_<biphoton::SincSpectrumFit>(m, "SincSpectrumFit")
      .def_readonly("amplitude", &biphoton::SincSpectrumFit::amplitude)
      .def_readonly("l_gvd_fs2", &biphoton::SincSpectrumFit::l_gvd_fs2)
      .def_readonly("center_nm", &biphoton::SincSpectrumFit::center_nm)
      .def_readonly("amplitude_sigma",
                    &biphoton::SincSpectrumFit::amplitude_sigma)
      .def_readonly("l_gvd_sigma", &biphoton::SincSpectrumFit::l_gvd_sigma)
      .def_readonly("center_sigma", &biphoton::SincSpectrumFit::center_sigma)
      .def("model", &biphoton::SincSpectrumFit::model, py::arg("lambda_nm"))
      .def("fwhm_nm", &biphoton::SincSpectrumFit::fwhm_nm);
  m.def("fit_sinc_spectrum", &biphoton::fit_sinc_spectrum, py::arg("samples"));

  py::class_<Channel>(m, "Channel")
      .def(py::init<>())
      .def_readwrite("center_nm", &Channel::center_nm)
      .def_readwrite("width_nm", &Channel::width_nm)
      .def_readwrite("insertion_loss_db", &Channel::insertion_loss_db)
      .def_readwrite("extinction_db", &Channel::extinction_db)
      .def("transmission", &Channel::transmission, py::arg("lambda_nm"));
  py::class_<ChannelBank>(m, "ChannelBank")
      .def(py::init<>())
      .def_readwrite("channels", &ChannelBank::channels)
      .def_readwrite("label", &ChannelBank::label);
  m.def("matched_channel_banks", &multiplex::matched_channel_banks,
        py::arg("lambda_pump_nm"), py::arg("count") = 8,
        py::arg("spacing_nm") = 8.0, py::arg("width_nm") = 0.8,
        py::arg("insertion_loss_db") = 3.0, py::arg("extinction_db") = 60.0);
  py::class_<multiplex::JsiMatrix>(m, "JsiMatrix")
      .def_readonly("linear", &multiplex::JsiMatrix::linear)
      .def_readonly("row_centers_nm", &multiplex::JsiMatrix::row_centers_nm)
      .def_readonly("col_centers_nm", &multiplex::JsiMatrix::col_centers_nm)
      .def_readonly("max_entry", &multiplex::JsiMatrix::max_entry)
      .def("db_relative", &multiplex::JsiMatrix::db_relative);
  m.def("jsi_matrix", &multiplex::jsi_matrix, py::arg("spectrum"),
        py::arg("bank_b"), py::arg("bank_c"), py::arg("accidental_floor"));
  py::class_<multiplex::RejectionRatios>(m, "RejectionRatios")
      .def_readonly("adjacent_db", &multiplex::RejectionRatios::adjacent_db)
      .def_readonly("non_adjacent_db",
                    &multiplex::RejectionRatios::non_adjacent_db);
  m.def("rejection_ratios", &multiplex::rejection_ratios, py::arg("matrix"));

  py::class_<DetectorModel>(m, "DetectorModel")
      .def(py::init<>())
      .def_readwrite("efficiency_1", &DetectorModel::efficiency_1)
      .def_readwrite("efficiency_2", &DetectorModel::efficiency_2)
      .def_readwrite("dark_hz", &DetectorModel::dark_hz)
      .def_readwrite("window_ps", &DetectorModel::window_ps);
  py::class_<CountingResult>(m, "CountingResult")
      .def_readonly("duration_s", &CountingResult::duration_s)
      .def_readonly("counts_1", &CountingResult::counts_1)
      .def_readonly("counts_2", &CountingResult::counts_2)
      .def_readonly("counts_coincidence", &CountingResult::counts_coincidence)
      .def_readonly("counts_accidental", &CountingResult::counts_accidental)
      .def("r1_hz", &CountingResult::r1_hz)
      .def("r2_hz", &CountingResult::r2_hz)
      .def("rcc_hz", &CountingResult::rcc_hz)
      .def("rac_hz", &CountingResult::rac_hz);
  m.def("simulate_counts", &counting::simulate_counts, py::arg("pair_rate_hz"),
        py::arg("detector"), py::arg("duration_s"), py::arg("seed"));
  m.def("estimate_pair_rate", &counting::estimate_pair_rate, py::arg("r1_hz"),
        py::arg("r2_hz"), py::arg("rcc_hz"), py::arg("rac_hz"),
        py::arg("pump_power_mw"));
  m.def("car", &counting::car, py::arg("rcc_hz"), py::arg("rac_hz"));
  m.def("heralding_efficiency", &counting::heralding_efficiency,
        py::arg("rcc_hz"), py::arg("rac_hz"), py::arg("heralding_arm_hz"));
  m.def("spectral_brightness", &counting::spectral_brightness,
        py::arg("r1_hz"), py::arg("r2_hz"), py::arg("rcc_hz"),
        py::arg("rac_hz"), py::arg("pump_power_mw"), py::arg("bandwidth_nm"));

  py::class_<FransonConfig>(m, "FransonConfig")
      .def(py::init<>())
      .def_readwrite("arm_imbalance_ns", &FransonConfig::arm_imbalance_ns)
      .def_readwrite("window_ps", &FransonConfig::window_ps)
      .def_readwrite("single_photon_coherence_ps",
                     &FransonConfig::single_photon_coherence_ps)
      .def_readwrite("pump_coherence_us", &FransonConfig::pump_coherence_us)
      .def_readwrite("visibility", &FransonConfig::visibility)
      .def_readwrite("base_rate_hz", &FransonConfig::base_rate_hz)
      .def_readwrite("accidental_hz", &FransonConfig::accidental_hz)
      .def("lower_margin", &FransonConfig::lower_margin)
      .def("upper_margin", &FransonConfig::upper_margin)
      .def("conditions_met", &FransonConfig::conditions_met,
           py::arg("factor") = 100.0);
  m.def("coherence_time_from_bandwidth",
        &franson::coherence_time_from_bandwidth, py::arg("bandwidth_nm"),
        py::arg("lambda0_nm"));
  py::class_<franson::TimingHistogram>(m, "TimingHistogram")
      .def_readonly("long_short", &franson::TimingHistogram::long_short)
      .def_readonly("central", &franson::TimingHistogram::central)
      .def_readonly("short_long", &franson::TimingHistogram::short_long)
      .def_readonly("expected_side", &franson::TimingHistogram::expected_side)
      .def_readonly("expected_central",
                    &franson::TimingHistogram::expected_central);
  m.def("timing_histogram", &franson::timing_histogram, py::arg("config"),
        py::arg("phase_rad"), py::arg("visibility"), py::arg("duration_s"),
        py::arg("seed"));
  m.def("fringe", &franson::fringe, py::arg("config"), py::arg("phase_rad"));
  py::class_<franson::ScanPoint>(m, "ScanPoint")
      .def_readonly("phase_rad", &franson::ScanPoint::phase_rad)
      .def_readonly("counts", &franson::ScanPoint::counts)
      .def_readonly("error", &franson::ScanPoint::error)
      .def_readonly("fit_value", &franson::ScanPoint::fit_value);
  py::class_<franson::FringeFit>(m, "FringeFit")
      .def_readonly("visibility", &franson::FringeFit::visibility)
      .def_readonly("visibility_sigma", &franson::FringeFit::visibility_sigma)
      .def_readonly("phase_offset_rad", &franson::FringeFit::phase_offset_rad)
      .def_readonly("baseline", &franson::FringeFit::baseline)
      .def_readonly("amplitude", &franson::FringeFit::amplitude)
      .def_readonly("points", &franson::FringeFit::points)
      .def("summary", &franson::FringeFit::summary);
  m.def("scan_and_fit", &franson::scan_and_fit, py::arg("config"),
        py::arg("phase_schedule_rad"), py::arg("duration_per_point_s"),
        py::arg("seed"));
  m.def("fit_fringe", &franson::fit_fringe, py::arg("phases_rad"),
        py::arg("counts"));
  m.def("visibility_from_background", &franson::visibility_from_background,
        py::arg("intrinsic_visibility"), py::arg("base_rate_hz"),
        py::arg("accidental_hz"));

  py::class_<ChannelPlan>(m, "ChannelPlan")
      .def(py::init<>())
      .def_readwrite("count", &ChannelPlan::count)
      .def_readwrite("spacing_nm", &ChannelPlan::spacing_nm)
      .def_readwrite("width_nm", &ChannelPlan::width_nm)
      .def_readwrite("insertion_loss_db", &ChannelPlan::insertion_loss_db)
      .def_readwrite("extinction_db", &ChannelPlan::extinction_db)
      .def_readwrite("accidental_floor", &ChannelPlan::accidental_floor);
  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_static("paper_defaults", &Scenario::paper_defaults)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("output_dir", &Scenario::output_dir)
      .def_readwrite("source", &Scenario::source)
      .def_readwrite("poling", &Scenario::poling)
      .def_readwrite("detector", &Scenario::detector)
      .def_readwrite("channels", &Scenario::channels)
      .def_readwrite("franson", &Scenario::franson)
      .def_readwrite("franson_phase_points", &Scenario::franson_phase_points)
      .def_readwrite("franson_duration_per_point_s",
                     &Scenario::franson_duration_per_point_s);
  m.def("parse_scenario", &scenario::parse, py::arg("json_text"),
        py::arg("origin") = "scenario");
  m.def("load_scenario", &scenario::load_file, py::arg("path"));
  m.def("scenario_to_json", &scenario::to_json, py::arg("scenario"));

  py::class_<ReportRow>(m, "ReportRow")
      .def_readonly("quantity", &ReportRow::quantity)
      .def_readonly("reference", &ReportRow::reference)
      .def_readonly("computed", &ReportRow::computed)
      .def_readonly("tolerance", &ReportRow::tolerance)
      .def_property_readonly("status", [](const ReportRow& r) {
        switch (r.status) {
          case ReportRow::Status::pass: return "PASS";
          case ReportRow::Status::fail: return "FAIL";
          default: return "INFO";
        }
      });
  py::class_<ReproduceResult>(m, "ReproduceResult")
      .def_readonly("rows", &ReproduceResult::rows)
      .def("all_pass", &ReproduceResult::all_pass)
      .def("report_text", &ReproduceResult::report_text)
      .def("report_csv", &ReproduceResult::report_csv);
  m.def("run_reproduce", &report::run_reproduce, py::arg("scenario"));
  m.def("write_artifacts", &report::write_artifacts, py::arg("result"),
        py::arg("dir"));
}
