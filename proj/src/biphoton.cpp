#include "spdc/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spdc/constants.hpp"
#include "spdc/numeric.hpp"

namespace spdc {

void SourceParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("source: ") + name +
                                  " must be > 0");
  };
  positive(lambda_pump_nm, "lambda_pump_nm");
  positive(pump_power_mw, "pump_power_mw");
  positive(d33_pm_per_v, "d33_pm_per_v");
  positive(overlap_alpha_sq, "overlap_alpha_sq");
  positive(mode_area_um2, "mode_area_um2");
  positive(length_mm, "length_mm");
  if (n_degenerate) positive(*n_degenerate, "n_degenerate");
  if (n_pump) positive(*n_pump, "n_pump");
}

double SourceParams::resolved_n_degenerate() const {
  if (n_degenerate) return *n_degenerate;
  if (dispersion) return dispersion->index(degenerate_wavelength_nm());
  return DispersionModel::bulk_lithium_niobate_e().index(
      degenerate_wavelength_nm());
}

double SourceParams::resolved_n_pump() const {
  if (n_pump) return *n_pump;
  if (dispersion) return dispersion->index(lambda_pump_nm);
  return DispersionModel::bulk_lithium_niobate_e().index(lambda_pump_nm);
}

namespace biphoton {

double delta_k(const SourceParams& params, double nu, JsaMode mode) {
  if (mode == JsaMode::quadratic) {
    return params.gvd0_fs2_per_mm * kFs2PerMm * nu * nu;
  }
  if (!params.dispersion)
    throw std::invalid_argument(
        "delta_k: exact mode needs a dispersion model");
  const DispersionModel& d = *params.dispersion;
  const double omega0 =
      angular_frequency(params.degenerate_wavelength_nm() * kNm);
  auto k = [&](double omega) {
    return d.wavevector(wavelength_from_omega(omega) / kNm);
  };
  // Grating vector absorbed by matching at degeneracy:
  // dk(nu) = k_p - k_s - k_i - G with G = k_p - 2 k(omega0).
  return 2.0 * k(omega0) - k(omega0 + nu) - k(omega0 - nu);
}

std::complex<double> jsa(const SourceParams& params, double nu, JsaMode mode) {
  const double half_arg =
      0.5 * params.length_mm * kMm * delta_k(params, nu, mode);
  return std::exp(std::complex<double>(0.0, -half_arg)) *
         numeric::sinc(half_arg);
}

double first_zero_nu(const SourceParams& params) {
  const double g = std::abs(params.gvd0_fs2_per_mm) * kFs2PerMm;
  if (!(g > 0.0))
    throw std::invalid_argument("first_zero_nu: GVD0 must be nonzero");
  return std::sqrt(2.0 * kPi / (params.length_mm * kMm * g));
}

double half_max_sinc_argument() { return 1.3915573782515105; }

}  // namespace biphoton

BiphotonSpectrum::BiphotonSpectrum(SourceParams params, double lo_nm,
                                   double hi_nm, int samples, JsaMode mode)
    : params_(std::move(params)), mode_(mode), lo_nm_(lo_nm), hi_nm_(hi_nm) {
  params_.validate();
  if (!(hi_nm > lo_nm) || samples < 2)
    throw std::invalid_argument("spectrum: empty or degenerate grid");
  wavelengths_.reserve(samples);
  intensities_.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double lam = lo_nm + (hi_nm - lo_nm) * i / (samples - 1);
    wavelengths_.push_back(lam);
    intensities_.push_back(intensity_at_lambda(lam));
  }
}

double BiphotonSpectrum::intensity_at_nu(double nu) const {
  return std::norm(biphoton::jsa(params_, nu, mode_));
}

double BiphotonSpectrum::nu_at_lambda(double lambda_nm) const {
  return angular_frequency(lambda_nm * kNm) -
         angular_frequency(center_nm() * kNm);
}

double BiphotonSpectrum::intensity_at_lambda(double lambda_nm) const {
  return intensity_at_nu(nu_at_lambda(lambda_nm));
}

namespace biphoton {

BiphotonSpectrum spectrum(const SourceParams& params, double lo_nm,
                          double hi_nm, int samples, JsaMode mode) {
  return BiphotonSpectrum(params, lo_nm, hi_nm, samples, mode);
}

namespace {

// Marches outward from the center until |h|^2 crosses one half, then
// bisects the bracketing interval. direction = +1 or -1.
double half_max_crossing(const SourceParams& params, JsaMode mode,
                         double window_lo_nm, double window_hi_nm,
                         int direction) {
  const double center = params.degenerate_wavelength_nm();
  auto intensity = [&](double lam_nm) {
    const double nu =
        angular_frequency(lam_nm * kNm) - angular_frequency(center * kNm);
    return std::norm(jsa(params, nu, mode));
  };
  const double step = 1.0 * direction;
  double prev = center;
  double lam = center + step;
  const double lo = std::min(window_lo_nm, window_hi_nm);
  const double hi = std::max(window_lo_nm, window_hi_nm);
  double last_above = center;
  double first_below = 0.0;
  bool found = false;
  while (lam >= lo && lam <= hi) {
    const double p = intensity(lam);
    if (p < 0.5) {
      last_above = prev;
      first_below = lam;
      found = true;
      break;
    }
    prev = lam;
    lam += step;
  }
  if (!found)
    throw std::runtime_error(
        "fwhm: no half-maximum crossing inside the search window");
  return numeric::bisect(
      [&](double l) { return intensity(l) - 0.5; },
      std::min(last_above, first_below), std::max(last_above, first_below),
      0.01);
}

}  // namespace

double fwhm(const SourceParams& params, JsaMode mode) {
  params.validate();
  const double center = params.degenerate_wavelength_nm();
  double lo = 0.6 * center;
  double hi = 1.6 * center;
  if (mode == JsaMode::exact_dispersion) {
    if (!params.dispersion)
      throw std::invalid_argument("fwhm: exact mode needs a dispersion model");
    lo = std::max(lo, params.dispersion->min_wavelength_nm());
    hi = std::min(hi, params.dispersion->max_wavelength_nm());
  }
  const double left = half_max_crossing(params, mode, lo, center, -1);
  const double right = half_max_crossing(params, mode, center, hi, +1);
  return right - left;
}

PairRate pair_rate_closed(const SourceParams& params) {
  params.validate();
  const double g = std::abs(params.gvd0_fs2_per_mm) * kFs2PerMm;
  if (!(g > 0.0))
    throw std::invalid_argument(
        "pair_rate_closed: GVD0 = 0 is outside the model's validity");
  const double p_w = params.pump_power_mw * 1e-3;
  const double d = params.d33_pm_per_v * 1e-12;
  const double s = params.mode_area_um2 * kUm * kUm;
  const double lp = params.lambda_pump_nm * kNm;
  const double length = params.length_mm * kMm;
  const double n0 = params.resolved_n_degenerate();
  const double np = params.resolved_n_pump();
  const double prefactor =
      8.0 * p_w * d * d * params.overlap_alpha_sq /
      (3.0 * kVacuumPermittivity * kSpeedOfLight * s * lp * lp * n0 * n0 * np);
  const double rate =
      prefactor * std::sqrt(2.0 * kPi * length * length * length / g);
  return {rate, rate / params.pump_power_mw};
}

PairRate pair_rate_numeric(const SourceParams& params, JsaMode mode,
                           double window_zeros) {
  params.validate();
  if (window_zeros < 0.0)
    throw std::invalid_argument("pair_rate_numeric: negative window");
  const double p_w = params.pump_power_mw * 1e-3;
  const double d = params.d33_pm_per_v * 1e-12;
  const double s = params.mode_area_um2 * kUm * kUm;
  const double lp = params.lambda_pump_nm * kNm;
  const double length = params.length_mm * kMm;
  const double n0 = params.resolved_n_degenerate();
  const double np = params.resolved_n_pump();
  const double omega_p = angular_frequency(lp);

  // |A|^2 with |E_p|^2 = 2 P / (e0 n_p c S).
  const double e_p_sq =
      2.0 * p_w / (kVacuumPermittivity * np * kSpeedOfLight * s);
  const double a_sq = d * d * params.overlap_alpha_sq * length * length *
                      e_p_sq * omega_p * omega_p /
                      (4.0 * kPi * kPi * kSpeedOfLight * kSpeedOfLight * n0 *
                       n0);

  const double nu0 = first_zero_nu(params);
  double integral = 0.0;
  if (window_zeros > 0.0) {
    // |h|^2 is even in nu in both modes. Integrated lobe by lobe — the
    // sinc^2 zeros sit at nu0 sqrt(n) — so the adaptive error estimate
    // stays honest on the oscillatory tail.
    auto intensity = [&](double nu) { return std::norm(jsa(params, nu, mode)); };
    const int lobes =
        static_cast<int>(std::ceil(window_zeros * window_zeros));
    const double nu_max = window_zeros * nu0;
    for (int n = 0; n < lobes; ++n) {
      const double a = std::min(nu0 * std::sqrt(double(n)), nu_max);
      const double b = std::min(nu0 * std::sqrt(double(n) + 1.0), nu_max);
      if (b <= a) break;
      integral += numeric::integrate(intensity, a, b, 1e-9);
    }
    integral *= 2.0;
  }
  const double rate = a_sq * integral;
  return {rate, rate / params.pump_power_mw};
}

double SincSpectrumFit::model(double lambda_nm) const {
  const double u = 1.0 / (lambda_nm * kNm) - 1.0 / (center_nm * kNm);
  const double arg = 2.0 * kPi * kPi * kSpeedOfLight * kSpeedOfLight *
                     std::abs(l_gvd_fs2) * 1e-30 * u * u;
  const double sc = numeric::sinc(arg);
  return amplitude * sc * sc;
}

double SincSpectrumFit::fwhm_nm() const {
  const double u_half =
      std::sqrt(half_max_sinc_argument() /
                (2.0 * kPi * kPi * kSpeedOfLight * kSpeedOfLight *
                 std::abs(l_gvd_fs2) * 1e-30));
  const double inv_c = 1.0 / (center_nm * kNm);
  return (1.0 / (inv_c - u_half) - 1.0 / (inv_c + u_half)) / kNm;
}

SincSpectrumFit fit_sinc_spectrum(const std::vector<SpectrumSample>& samples) {
  if (samples.size() < 5)
    throw std::invalid_argument(
        "fit_sinc_spectrum: need at least 5 samples across the main lobe");
  for (const auto& s : samples)
    if (!(s.error > 0.0))
      throw std::invalid_argument("fit_sinc_spectrum: non-positive error");

  // Initial guesses from the raw samples.
  auto peak = std::max_element(
      samples.begin(), samples.end(),
      [](const auto& a, const auto& b) { return a.counts < b.counts; });
  const double amp0 = peak->counts;
  const double center0 = peak->lambda_nm;
  double left = center0, right = center0;
  for (const auto& s : samples) {
    if (s.counts >= 0.5 * amp0) {
      left = std::min(left, s.lambda_nm);
      right = std::max(right, s.lambda_nm);
    }
  }
  double width0 = std::max(right - left, 1.0);
  const double u_half = 0.5 * (1.0 / ((center0 - 0.5 * width0) * kNm) -
                               1.0 / ((center0 + 0.5 * width0) * kNm));
  double gamma0 = half_max_sinc_argument() /
                  (2.0 * kPi * kPi * kSpeedOfLight * kSpeedOfLight * u_half *
                   u_half) /
                  1e-30;

  std::vector<double> xs, ys, sig;
  xs.reserve(samples.size());
  for (const auto& s : samples) {
    xs.push_back(s.lambda_nm);
    ys.push_back(s.counts);
    sig.push_back(s.error);
  }
  auto model = [](double lam, const Eigen::VectorXd& p) {
    SincSpectrumFit f;
    f.amplitude = p[0];
    f.l_gvd_fs2 = p[1];
    f.center_nm = p[2];
    return f.model(lam);
  };
  Eigen::VectorXd p0(3);
  p0 << amp0, gamma0, center0;
  const auto fit = numeric::fit_curve(model, xs, ys, sig, p0);
  if (!fit.converged)
    throw std::runtime_error("fit_sinc_spectrum: fit did not converge");

  SincSpectrumFit out;
  out.amplitude = fit.parameters[0];
  out.l_gvd_fs2 = std::abs(fit.parameters[1]);
  out.center_nm = fit.parameters[2];
  out.amplitude_sigma = std::sqrt(std::max(0.0, fit.covariance(0, 0)));
  out.l_gvd_sigma = std::sqrt(std::max(0.0, fit.covariance(1, 1)));
  out.center_sigma = std::sqrt(std::max(0.0, fit.covariance(2, 2)));
  out.converged = fit.converged;
  return out;
}

}  // namespace biphoton
}  // namespace spdc
