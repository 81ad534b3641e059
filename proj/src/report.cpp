#include "spdc/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/multiplex.hpp"

namespace spdc {

namespace {

std::string status_name(ReportRow::Status s) {
  switch (s) {
    case ReportRow::Status::pass: return "PASS";
    case ReportRow::Status::fail: return "FAIL";
    default: return "INFO";
  }
}

}  // namespace

bool ReproduceResult::all_pass() const {
  for (const auto& r : rows)
    if (r.status == ReportRow::Status::fail) return false;
  return true;
}

std::string ReproduceResult::report_text() const {
  size_t wq = 8, wr = 9, wc = 8, wt = 9;
  for (const auto& r : rows) {
    wq = std::max(wq, r.quantity.size());
    wr = std::max(wr, r.reference.size());
    wc = std::max(wc, r.computed.size());
    wt = std::max(wt, r.tolerance.size());
  }
  std::ostringstream os;
  os << "source reproduction report\n";
  auto pad = [](const std::string& s, size_t w) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  os << pad("quantity", wq) << pad("reference", wr) << pad("computed", wc)
     << pad("tolerance", wt) << "status\n";
  for (const auto& r : rows)
    os << pad(r.quantity, wq) << pad(r.reference, wr) << pad(r.computed, wc)
       << pad(r.tolerance, wt) << status_name(r.status) << '\n';
  os << (all_pass() ? "\nall checks passed\n" : "\nFAILURES present\n");
  return os.str();
}

std::string ReproduceResult::report_csv() const {
  std::ostringstream os;
  os << "quantity,reference,computed,tolerance,status\n";
  auto quote = [](const std::string& s) { return '"' + s + '"'; };
  for (const auto& r : rows)
    os << quote(r.quantity) << ',' << quote(r.reference) << ','
       << quote(r.computed) << ',' << quote(r.tolerance) << ','
       << status_name(r.status) << '\n';
  return os.str();
}

namespace report {

std::string format_double(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
  return buf;
}

namespace {

ReportRow checked(std::string quantity, std::string reference, double computed,
                  std::string computed_unit, double target, double rel_tol) {
  ReportRow row;
  row.quantity = std::move(quantity);
  row.reference = std::move(reference);
  row.computed = format_double(computed) +
                 (computed_unit.empty() ? "" : " " + computed_unit);
  row.tolerance = "within " + format_double(rel_tol * 100.0, 3) + "%";
  row.status = std::abs(computed - target) <= rel_tol * std::abs(target)
                   ? ReportRow::Status::pass
                   : ReportRow::Status::fail;
  return row;
}

ReportRow window_row(std::string quantity, std::string reference,
                     double computed, std::string unit, double lo, double hi) {
  ReportRow row;
  row.quantity = std::move(quantity);
  row.reference = std::move(reference);
  row.computed = format_double(computed) + (unit.empty() ? "" : " " + unit);
  row.tolerance = "in [" + format_double(lo) + ", " + format_double(hi) + "] " +
                  unit;
  row.status = (computed >= lo && computed <= hi) ? ReportRow::Status::pass
                                                  : ReportRow::Status::fail;
  return row;
}

ReportRow bound_row(std::string quantity, std::string reference,
                    double computed, std::string unit, double minimum) {
  ReportRow row;
  row.quantity = std::move(quantity);
  row.reference = std::move(reference);
  row.computed = format_double(computed) + (unit.empty() ? "" : " " + unit);
  row.tolerance = ">= " + format_double(minimum) + " " + unit;
  row.status = computed >= minimum ? ReportRow::Status::pass
                                   : ReportRow::Status::fail;
  return row;
}

// Tabulated waveguide-like model synthesized to hit a target GVD at
// lambda0: n(L) = n0 + (GVD * 2 pi c^2 / lambda0^3 / 2) (L - lambda0)^2.
DispersionModel synthesized_waveguide_table(double lambda0_nm,
                                            double gvd_fs2_per_mm,
                                            double n_center) {
  const double lam = lambda0_nm * kNm;
  const double d2n = gvd_fs2_per_mm * kFs2PerMm * 2.0 * kPi * kSpeedOfLight *
                     kSpeedOfLight / (lam * lam * lam);     // per m^2
  const double b_nm = 0.5 * d2n * kNm * kNm;                // per nm^2
  std::vector<double> xs, ys;
  for (int i = 0; i <= 200; ++i) {
    const double x = lambda0_nm - 100.0 + i;
    xs.push_back(x);
    ys.push_back(n_center + b_nm * (x - lambda0_nm) * (x - lambda0_nm));
  }
  return DispersionModel::tabulated(std::move(xs), std::move(ys));
}

std::string matrix_csv(const multiplex::JsiMatrix& m, bool db) {
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

ReproduceResult run_reproduce(const Scenario& sc) {
  sc.validate();
  ReproduceResult out;
  auto& rows = out.rows;

  // --- dispersion checks -------------------------------------------------
  const auto bulk = DispersionModel::bulk_lithium_niobate_e();
  const double zero_gvd = bulk.find_zero_gvd(1700.0, 2100.0);
  rows.push_back(window_row("bulk LN zero-GVD wavelength", "~1920 nm",
                            zero_gvd, "nm", 1850.0, 2000.0));

  const auto waveguide = synthesized_waveguide_table(
      1475.0, -60.0, sc.source.n_degenerate.value_or(1.97));
  const double gvd_wg = waveguide.gvd(1475.0);
  ReportRow gvd_row;
  gvd_row.quantity = "waveguide GVD at 1475 nm (synthesized table)";
  gvd_row.reference = "-60 fs^2/mm";
  gvd_row.computed = format_double(gvd_wg) + " fs^2/mm";
  gvd_row.tolerance = "within 0.5 fs^2/mm";
  gvd_row.status = std::abs(gvd_wg + 60.0) <= 0.5 ? ReportRow::Status::pass
                                                  : ReportRow::Status::fail;
  rows.push_back(gvd_row);

  // --- spectrum ----------------------------------------------------------
  const double fwhm_nm = biphoton::fwhm(sc.source, JsaMode::quadratic);
  rows.push_back(checked("SPDC spectrum FWHM (quadratic model)", "~200 nm",
                         fwhm_nm, "nm", 200.0, 0.05));

  const double center = sc.source.degenerate_wavelength_nm();
  const auto spec = biphoton::spectrum(sc.source, center - 180.0,
                                       center + 220.0, 801,
                                       JsaMode::quadratic);
  {
    std::ostringstream os;
    os << "wavelength_nm,intensity\n";
    for (size_t i = 0; i < spec.wavelengths_nm().size(); ++i)
      os << format_double(spec.wavelengths_nm()[i], 8) << ','
         << format_double(spec.intensities()[i], 8) << '\n';
    out.spectrum_csv = os.str();
  }

  // --- absolute rates ----------------------------------------------------
  const auto closed = biphoton::pair_rate_closed(sc.source);
  rows.push_back(checked("pair generation rate, closed form",
                         "8.44e11 Hz/mW", closed.hz_per_mw, "Hz/mW", 8.44e11,
                         0.05));
  const auto numeric = biphoton::pair_rate_numeric(sc.source);
  rows.push_back(checked("pair generation rate, quadrature",
                         "8.44e11 Hz/mW", numeric.hz_per_mw, "Hz/mW", 8.44e11,
                         0.05));
  {
    const double ratio = numeric.hz_per_mw / closed.hz_per_mw;
    ReportRow row;
    row.quantity = "closed-form / quadrature agreement";
    row.reference = "ratio 1";
    row.computed = format_double(ratio, 8);
    row.tolerance = "within 5%";
    row.status = std::abs(ratio - 1.0) <= 0.05 ? ReportRow::Status::pass
                                               : ReportRow::Status::fail;
    if (row.status == ReportRow::Status::fail)
      row.computed += " (closed " + format_double(closed.hz_per_mw) +
                      ", quadrature " + format_double(numeric.hz_per_mw) +
                      " Hz/mW)";
    rows.push_back(row);
  }
  {
    // Same formula with indices from the bulk crystal model instead of the
    // configured effective indices; recorded for reference only.
    SourceParams bulk_params = sc.source;
    bulk_params.n_degenerate.reset();
    bulk_params.n_pump.reset();
    bulk_params.dispersion.reset();
    ReportRow row;
    row.quantity = "pair rate with bulk-index fill";
    row.reference = "8.44e11 Hz/mW";
    row.computed =
        format_double(biphoton::pair_rate_closed(bulk_params).hz_per_mw) +
        " Hz/mW";
    row.tolerance = "informational";
    row.status = ReportRow::Status::info;
    rows.push_back(row);
  }

  // --- counting estimators on the published counts -----------------------
  rows.push_back(checked(
      "pair-rate estimate from measured counts", "2.79e11 Hz/mW",
      counting::estimate_pair_rate(126e3, 295e3, 4792.0, 8.0, 2.78e-5),
      "Hz/mW", 2.79e11, 0.02));
  rows.push_back(checked("coincidence-to-accidental ratio", "599",
                         counting::car(4792.0, 8.0), "", 599.0, 0.02));
  rows.push_back(checked("heralding efficiency", "3.8%",
                         counting::heralding_efficiency(4792.0, 8.0, 126e3),
                         "", 0.038, 0.02));
  rows.push_back(checked(
      "spectral brightness", "1.53e9 Hz/nm/mW",
      counting::spectral_brightness(159e3, 215e3, 1317.0, 12.0, 0.0214, 0.8),
      "Hz/nm/mW", 1.53e9, 0.02));

  // --- forward-simulation round trip (Monte Carlo) ------------------------
  {
    const double injected = 7.7696e6;  // reproduces the published singles
    DetectorModel det = sc.detector;
    det.efficiency_1 = 126e3 / injected;
    det.efficiency_2 = 295e3 / injected;
    det.dark_hz = 0.0;
    const auto runs = counting::run_ensemble(injected, det, 1.0, 1.0,
                                             sc.seed + 1000, 100);
    double mean = 0.0;
    for (const auto& r : runs) mean += r.n_estimate_hz_per_mw;
    mean /= runs.size();
    rows.push_back(checked("simulated counting round trip (100 seeds)",
                           "injected rate", mean, "Hz", injected, 0.01));
    out.ensemble_csv = counting::ensemble_csv(runs);
  }

  // --- WDM correlation matrix ---------------------------------------------
  const auto [bank_b, bank_c] = multiplex::matched_channel_banks(
      sc.source.lambda_pump_nm, sc.channels.count, sc.channels.spacing_nm,
      sc.channels.width_nm, sc.channels.insertion_loss_db,
      sc.channels.extinction_db);
  const double outer =
      sc.channels.spacing_nm * sc.channels.count + 10.0 * sc.channels.width_nm;
  const auto wdm_spec = biphoton::spectrum(
      sc.source, center - 1.35 * outer, center + 1.35 * outer, 257,
      JsaMode::quadratic);
  const auto matrix = multiplex::jsi_matrix(wdm_spec, bank_b, bank_c,
                                            sc.channels.accidental_floor);
  const auto ratios = multiplex::rejection_ratios(matrix);
  rows.push_back(bound_row("WDM adjacent-channel rejection", "32 dB",
                           ratios.adjacent_db, "dB", 32.0));
  rows.push_back(bound_row("WDM non-adjacent-channel rejection", "40 dB",
                           ratios.non_adjacent_db, "dB", 40.0));
  out.jsi_csv = matrix_csv(matrix, false);
  out.jsi_db_csv = matrix_csv(matrix, true);

  // Wavelength sweep in 10 nm steps across the band (both arms), like the
  // published frequency-correlation map.
  {
    ChannelBank sweep_b, sweep_c;
    sweep_b.label = "sweepB";
    sweep_c.label = "sweepC";
    for (double lam = center - outer; lam <= center + outer + 1e-9;
         lam += 10.0) {
      Channel ch;
      ch.center_nm = lam;
      ch.width_nm = sc.channels.width_nm;
      ch.insertion_loss_db = sc.channels.insertion_loss_db;
      ch.extinction_db = sc.channels.extinction_db;
      sweep_b.channels.push_back(ch);
      sweep_c.channels.push_back(ch);
    }
    const auto sweep = multiplex::jsi_matrix(wdm_spec, sweep_b, sweep_c,
                                             sc.channels.accidental_floor);
    out.sweep_csv = matrix_csv(sweep, false);
  }

  // --- Franson interference ------------------------------------------------
  rows.push_back(bound_row(
      "Franson margin: arm imbalance / single-photon coherence", "T_c1 << dT",
      sc.franson.lower_margin(), "", 100.0));
  rows.push_back(bound_row(
      "Franson margin: pump coherence / arm imbalance", "dT << T_c2",
      sc.franson.upper_margin(), "", 100.0));

  std::vector<double> phases;
  for (int i = 0; i < sc.franson_phase_points; ++i)
    phases.push_back(2.0 * kPi * i / (sc.franson_phase_points - 1));

  std::ostringstream fits;
  for (int j = 1; j <= sc.channels.count; ++j) {
    const Channel& ch = bank_b.channels[j - 1];
    const double nu = wdm_spec.nu_at_lambda(ch.center_nm);
    FransonConfig cfg = sc.franson;
    cfg.base_rate_hz =
        sc.franson.base_rate_hz * wdm_spec.intensity_at_nu(nu);
    const auto fit = franson::scan_and_fit(
        cfg, phases, sc.franson_duration_per_point_s, sc.seed + 200 + j);
    // expected fitted value: the fringe fit dilutes as b/a = V S / (S + B)
    const double signal = cfg.base_rate_hz / 2.0;
    const double v_model =
        cfg.visibility * signal / (signal + cfg.accidental_hz);

    ReportRow row;
    row.quantity = "Franson visibility, channel pair " + std::to_string(j);
    row.reference = "> 0.97 (max 0.9917)";
    row.computed = format_double(fit.visibility) + " +/- " +
                   format_double(fit.visibility_sigma, 3) + " (model " +
                   format_double(v_model, 5) + ")";
    row.tolerance = "> 0.7071 (Bell bound)";
    row.status = fit.visibility > 1.0 / std::sqrt(2.0)
                     ? ReportRow::Status::pass
                     : ReportRow::Status::fail;
    rows.push_back(row);

    std::ostringstream scan;
    scan << "phase_rad,counts,counts_err,fit_value\n";
    for (const auto& p : fit.points)
      scan << format_double(p.phase_rad, 8) << ',' << format_double(p.counts, 8)
           << ',' << format_double(p.error, 8) << ','
           << format_double(p.fit_value, 8) << '\n';
    out.franson_scans.emplace_back("franson_scan_ch" + std::to_string(j),
                                   scan.str());
    fits << "channel " << j << " (" << format_double(ch.center_nm, 7) << " / "
         << format_double(bank_c.channels[j - 1].center_nm, 7) << " nm)\n"
         << fit.summary() << '\n';
  }
  out.franson_fits_txt = fits.str();

  return out;
}

void write_artifacts(const ReproduceResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("report: cannot write " + name);
    f << content;
  };
  write("report.txt", result.report_text());
  write("report.csv", result.report_csv());
  write("spectrum.csv", result.spectrum_csv);
  write("jsi_matrix.csv", result.jsi_csv);
  write("jsi_matrix_db.csv", result.jsi_db_csv);
  write("correlation_sweep.csv", result.sweep_csv);
  write("counting_ensemble.csv", result.ensemble_csv);
  write("franson_fits.txt", result.franson_fits_txt);
  for (const auto& [name, csv] : result.franson_scans)
    write(name + ".csv", csv);
}

}  // namespace report
}  // namespace spdc
