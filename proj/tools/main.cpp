// spdcsim: quasi-phase-matched SPDC source simulator.
//
// Subcommands expose the library modules; `reproduce` regenerates every
// desk-checkable quantity of the source into a pass/fail report. Exit
// codes: 0 success / all checks pass, 1 reproduce failures, 2 usage or
// configuration errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdc/biphoton.hpp"
#include "spdc/constants.hpp"
#include "spdc/counting.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/franson.hpp"
#include "spdc/multiplex.hpp"
#include "spdc/qpm.hpp"
#include "spdc/report.hpp"
#include "spdc/scenario.hpp"

namespace {

using spdc::report::format_double;

spdc::Scenario load_scenario(const std::string& path) {
  if (path.empty()) return spdc::Scenario::paper_defaults();
  return spdc::scenario::load_file(path);
}

spdc::DispersionModel load_model(const std::string& table_path) {
  if (table_path.empty()) return spdc::DispersionModel::bulk_lithium_niobate_e();
  return spdc::DispersionModel::from_table_file(table_path);
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::string matrix_to_csv(const spdc::multiplex::JsiMatrix& m, bool db) {
  std::ostringstream os;
  os << "bankB_center_nm";
  for (double c : m.col_centers_nm) os << ',' << format_double(c, 8);
  os << '\n';
  for (size_t i = 0; i < m.linear.size(); ++i) {
    os << format_double(m.row_centers_nm[i], 8);
    for (size_t j = 0; j < m.linear[i].size(); ++j)
      os << ',' << format_double(db ? m.db_relative(i, j) : m.linear[i][j], 8);
    os << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-phase-matched SPDC source simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  app.add_option("--scenario", scenario_path,
                 "Scenario JSON file; omitted = built-in defaults")
      ->configurable(false);

  // ---- dispersion ----------------------------------------------------------
  auto* disp = app.add_subcommand(
      "dispersion", "Refractive index, group velocity and GVD of a model");
  std::string disp_table;
  std::optional<double> disp_index, disp_u, disp_gvd;
  std::vector<double> disp_zero, disp_sweep;
  std::string disp_csv;
  disp->add_option("--table", disp_table,
                   "Tabulated n_eff file (wavelength_nm n_eff per line); "
                   "default is the bulk LN extraordinary-index model");
  disp->add_option("--index", disp_index, "Print n at this wavelength (nm)");
  disp->add_option("--group-velocity", disp_u,
                   "Print group velocity (m/s) at this wavelength (nm)");
  disp->add_option("--gvd", disp_gvd,
                   "Print GVD (fs^2/mm) at this wavelength (nm)");
  disp->add_option("--zero-gvd", disp_zero,
                   "Bisect the zero-GVD wavelength in a bracket: LO HI (nm)")
      ->expected(2);
  disp->add_option("--sweep", disp_sweep,
                   "CSV sweep over LO HI POINTS (nm, nm, count)")
      ->expected(3);
  disp->add_option("--csv", disp_csv, "Sweep output path ('-' = stdout)");

  // ---- design --------------------------------------------------------------
  auto* design = app.add_subcommand(
      "design", "Quasi-phase-matching arithmetic (periods, mismatch)");
  std::vector<double> fourier_args, mismatch_args, degen_bracket;
  std::string design_table;
  std::optional<double> design_pump;
  double design_period_um = 4.0;
  int design_order = 1;
  design->add_option("--table", design_table,
                     "Tabulated n_eff file used for all fields; default bulk LN");
  design->add_option("--fourier", fourier_args,
                     "Poling Fourier coefficient: ORDER DUTY_CYCLE")
      ->expected(2);
  design->add_option("--period-for-pump", design_pump,
                     "Solve the poling period (um) for this pump (nm)");
  design->add_option("--degenerate", degen_bracket,
                     "Solve the degenerate wavelength in bracket LO HI (nm)")
      ->expected(2);
  design->add_option("--mismatch", mismatch_args,
                     "Phase mismatch (rad/m) for PUMP SIGNAL IDLER (nm)")
      ->expected(3);
  design->add_option("--period-um", design_period_um,
                     "Poling period (um) for --degenerate/--mismatch");
  design->add_option("--order", design_order, "QPM order m (default 1)");

  // ---- spectrum -------------------------------------------------------------
  auto* spectrum = app.add_subcommand(
      "spectrum", "Biphoton emission spectrum and its FWHM");
  bool spectrum_fwhm = false;
  std::string spectrum_mode = "quadratic";
  std::vector<double> spectrum_window;
  int spectrum_points = 801;
  std::string spectrum_csv;
  spectrum->add_flag("--fwhm", spectrum_fwhm,
                     "Print the full width at half maximum (nm)");
  spectrum->add_option("--mode", spectrum_mode,
                       "quadratic (default) or exact (needs --table)")
      ->check(CLI::IsMember({"quadratic", "exact"}));
  std::string spectrum_table;
  spectrum->add_option("--table", spectrum_table,
                       "Dispersion table for exact mode");
  spectrum->add_option("--window", spectrum_window,
                       "Sample window LO HI (nm); default center -180/+220")
      ->expected(2);
  spectrum->add_option("--points", spectrum_points, "Sample count");
  spectrum->add_option("--csv", spectrum_csv,
                       "Write wavelength_nm,intensity CSV ('-' = stdout)");

  // ---- rates ----------------------------------------------------------------
  auto* rates = app.add_subcommand(
      "rates", "Absolute pair-generation rate, closed form and quadrature");
  bool rates_closed = false, rates_numeric = false;
  rates->add_flag("--closed", rates_closed, "Print only the closed form");
  rates->add_flag("--numeric", rates_numeric, "Print only the quadrature value");

  // ---- correlate -------------------------------------------------------------
  auto* correlate = app.add_subcommand(
      "correlate", "Channelized coincidence matrix and rejection ratios");
  double grid_step = 0.0;
  std::string correlate_csv;
  bool correlate_db = false;
  correlate->add_option(
      "--grid-step", grid_step,
      "Sweep both arms in these steps (nm) instead of the matched bank");
  correlate->add_flag("--db", correlate_db, "Emit dB relative to the peak");
  correlate->add_option("--csv", correlate_csv, "Output path ('-' = stdout)");

  // ---- franson ---------------------------------------------------------------
  auto* franson_cmd = app.add_subcommand(
      "franson", "Folded Franson interferometer: fringes, histogram, scans");
  std::optional<double> fringe_phase, hist_phase;
  bool franson_scan = false;
  double hist_duration = 1.0;
  std::string franson_csv;
  franson_cmd->add_option("--fringe", fringe_phase,
                          "Expected coincidence rate (Hz) at this phase (rad)");
  franson_cmd->add_option("--histogram", hist_phase,
                          "Simulated three-bin timing histogram at phase (rad)");
  franson_cmd->add_option("--duration", hist_duration,
                          "Histogram duration (s, default 1)");
  franson_cmd->add_flag("--scan", franson_scan,
                        "Run the seeded phase scan and visibility fit");
  franson_cmd->add_option("--csv", franson_csv,
                          "Scan output path ('-' = stdout)");

  // ---- reproduce ---------------------------------------------------------------
  auto* reproduce = app.add_subcommand(
      "reproduce", "Recompute all reference quantities into a pass/fail report");
  std::string reproduce_out;
  std::optional<uint64_t> reproduce_seed;
  reproduce->add_option("--out", reproduce_out,
                        "Artifact directory (default: scenario output_dir)");
  reproduce->add_option("--seed", reproduce_seed, "Override the scenario seed");
  bool print_config = false;
  reproduce->add_flag("--print-config", print_config,
                      "Print the effective scenario JSON and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    const spdc::Scenario sc = load_scenario(scenario_path);

    if (disp->parsed()) {
      const auto model = load_model(disp_table);
      if (disp_index)
        std::cout << "n(" << *disp_index << " nm) = "
                  << format_double(model.index(*disp_index), 10) << '\n';
      if (disp_u)
        std::cout << "u(" << *disp_u << " nm) = "
                  << format_double(model.group_velocity(*disp_u), 10)
                  << " m/s\n";
      if (disp_gvd)
        std::cout << "GVD(" << *disp_gvd << " nm) = "
                  << format_double(model.gvd(*disp_gvd), 10) << " fs^2/mm\n";
      if (disp_zero.size() == 2)
        std::cout << "zero-GVD wavelength = "
                  << format_double(
                         model.find_zero_gvd(disp_zero[0], disp_zero[1]), 8)
                  << " nm\n";
      if (disp_sweep.size() == 3) {
        std::ostringstream os;
        os << "wavelength_nm,n,group_velocity_m_s,gvd_fs2_mm\n";
        const int n = static_cast<int>(disp_sweep[2]);
        for (int i = 0; i < n; ++i) {
          const double lam =
              disp_sweep[0] + (disp_sweep[1] - disp_sweep[0]) * i /
                                  std::max(1, n - 1);
          os << format_double(lam, 8) << ',' << format_double(model.index(lam), 10)
             << ',' << format_double(model.group_velocity(lam), 10) << ','
             << format_double(model.gvd(lam), 10) << '\n';
        }
        write_text(disp_csv, os.str());
      }
    }

    if (design->parsed()) {
      const auto model = load_model(design_table);
      if (fourier_args.size() == 2)
        std::cout << "f_m = "
                  << format_double(spdc::qpm::fourier_coefficient(
                                       static_cast<int>(fourier_args[0]),
                                       fourier_args[1]),
                                   10)
                  << '\n';
      if (design_pump)
        std::cout << "poling period = "
                  << format_double(spdc::qpm::solve_poling_period(
                                       model, model, *design_pump,
                                       design_order),
                                   10)
                  << " um\n";
      if (degen_bracket.size() == 2) {
        spdc::PolingSpec pol = sc.poling;
        pol.period_um = design_period_um;
        pol.order = design_order;
        std::cout << "degenerate wavelength = "
                  << format_double(spdc::qpm::solve_degenerate_wavelength(
                                       model, model, pol, degen_bracket[0],
                                       degen_bracket[1]),
                                   10)
                  << " nm\n";
      }
      if (mismatch_args.size() == 3) {
        spdc::PolingSpec pol = sc.poling;
        pol.period_um = design_period_um;
        pol.order = design_order;
        std::cout << "delta_k = "
                  << format_double(spdc::qpm::phase_mismatch(
                                       model, model, model, mismatch_args[0],
                                       mismatch_args[1], mismatch_args[2], pol),
                                   10)
                  << " rad/m\n";
      }
    }

    if (spectrum->parsed()) {
      spdc::SourceParams params = sc.source;
      spdc::JsaMode mode = spdc::JsaMode::quadratic;
      if (spectrum_mode == "exact") {
        mode = spdc::JsaMode::exact_dispersion;
        params.dispersion = std::make_shared<spdc::DispersionModel>(
            load_model(spectrum_table));
      }
      if (spectrum_fwhm)
        std::cout << "FWHM = "
                  << format_double(spdc::biphoton::fwhm(params, mode), 8)
                  << " nm\n";
      if (!spectrum_csv.empty()) {
        const double center = params.degenerate_wavelength_nm();
        double lo = center - 180.0, hi = center + 220.0;
        if (spectrum_window.size() == 2) {
          lo = spectrum_window[0];
          hi = spectrum_window[1];
        }
        const auto spec =
            spdc::biphoton::spectrum(params, lo, hi, spectrum_points, mode);
        std::ostringstream os;
        os << "wavelength_nm,intensity\n";
        for (size_t i = 0; i < spec.wavelengths_nm().size(); ++i)
          os << format_double(spec.wavelengths_nm()[i], 8) << ','
             << format_double(spec.intensities()[i], 8) << '\n';
        write_text(spectrum_csv, os.str());
      }
    }

    if (rates->parsed()) {
      const bool both = rates_closed == rates_numeric;
      double closed_v = 0.0, numeric_v = 0.0;
      if (both || rates_closed) {
        closed_v = spdc::biphoton::pair_rate_closed(sc.source).hz_per_mw;
        std::cout << "closed-form rate = " << format_double(closed_v, 8)
                  << " Hz/mW\n";
      }
      if (both || rates_numeric) {
        numeric_v = spdc::biphoton::pair_rate_numeric(sc.source).hz_per_mw;
        std::cout << "quadrature rate = " << format_double(numeric_v, 8)
                  << " Hz/mW\n";
      }
      if (both)
        std::cout << "ratio = " << format_double(numeric_v / closed_v, 8)
                  << '\n';
    }

    if (correlate->parsed()) {
      const double center = sc.source.degenerate_wavelength_nm();
      const double outer = sc.channels.spacing_nm * sc.channels.count +
                           10.0 * sc.channels.width_nm;
      const auto spec = spdc::biphoton::spectrum(
          sc.source, center - 1.35 * outer, center + 1.35 * outer, 257,
          spdc::JsaMode::quadratic);
      if (grid_step > 0.0) {
        spdc::ChannelBank b, c;
        b.label = "sweepB";
        c.label = "sweepC";
        for (double lam = center - outer; lam <= center + outer + 1e-9;
             lam += grid_step) {
          spdc::Channel ch;
          ch.center_nm = lam;
          ch.width_nm = sc.channels.width_nm;
          ch.insertion_loss_db = sc.channels.insertion_loss_db;
          ch.extinction_db = sc.channels.extinction_db;
          b.channels.push_back(ch);
          c.channels.push_back(ch);
        }
        const auto m = spdc::multiplex::jsi_matrix(
            spec, b, c, sc.channels.accidental_floor);
        write_text(correlate_csv, matrix_to_csv(m, correlate_db));
      } else {
        const auto [bank_b, bank_c] = spdc::multiplex::matched_channel_banks(
            sc.source.lambda_pump_nm, sc.channels.count, sc.channels.spacing_nm,
            sc.channels.width_nm, sc.channels.insertion_loss_db,
            sc.channels.extinction_db);
        const auto m = spdc::multiplex::jsi_matrix(
            spec, bank_b, bank_c, sc.channels.accidental_floor);
        const auto r = spdc::multiplex::rejection_ratios(m);
        std::cout << "adjacent rejection = " << format_double(r.adjacent_db, 6)
                  << " dB\nnon-adjacent rejection = "
                  << format_double(r.non_adjacent_db, 6) << " dB\n";
        write_text(correlate_csv, matrix_to_csv(m, correlate_db));
      }
    }

    if (franson_cmd->parsed()) {
      if (fringe_phase)
        std::cout << "fringe(" << *fringe_phase << " rad) = "
                  << format_double(spdc::franson::fringe(sc.franson,
                                                         *fringe_phase),
                                   8)
                  << " Hz\n";
      if (hist_phase) {
        const auto h = spdc::franson::timing_histogram(
            sc.franson, *hist_phase, sc.franson.visibility, hist_duration,
            sc.seed);
        std::cout << "long-short " << h.long_short << "\ncentral " << h.central
                  << "\nshort-long " << h.short_long << '\n';
      }
      if (franson_scan) {
        std::vector<double> phases;
        for (int i = 0; i < sc.franson_phase_points; ++i)
          phases.push_back(2.0 * spdc::kPi * i /
                           (sc.franson_phase_points - 1));
        const auto fit = spdc::franson::scan_and_fit(
            sc.franson, phases, sc.franson_duration_per_point_s, sc.seed);
        std::cout << fit.summary();
        if (!franson_csv.empty()) {
          std::ostringstream os;
          os << "phase_rad,counts,counts_err,fit_value\n";
          for (const auto& p : fit.points)
            os << format_double(p.phase_rad, 8) << ','
               << format_double(p.counts, 8) << ',' << format_double(p.error, 8)
               << ',' << format_double(p.fit_value, 8) << '\n';
          write_text(franson_csv, os.str());
        }
      }
    }

    if (reproduce->parsed()) {
      spdc::Scenario run = sc;
      if (reproduce_seed) run.seed = *reproduce_seed;
      if (print_config) {
        std::cout << spdc::scenario::to_json(run);
        return 0;
      }
      const auto result = spdc::report::run_reproduce(run);
      const std::string dir =
          reproduce_out.empty() ? run.output_dir : reproduce_out;
      spdc::report::write_artifacts(result, dir);
      std::cout << result.report_text();
      std::cout << "artifacts written to " << dir << '\n';
      return result.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
