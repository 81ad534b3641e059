#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "spdc/dispersion.hpp"

namespace spdc {

/// Everything the joint-spectrum and rate formulas need. Defaults are the
/// published operating point of the source.
///
/// n_degenerate / n_pump may be set explicitly (e.g. waveguide effective
/// indices); when unset they are resolved from the attached dispersion
/// model, or from the built-in bulk LN model as a last resort.
struct SourceParams {
  double lambda_pump_nm = 735.76;
  double pump_power_mw = 1.0;
  double d33_pm_per_v = 33.0;
  double overlap_alpha_sq = 0.928;
  double mode_area_um2 = 1.26;
  double length_mm = 6.0;
  double gvd0_fs2_per_mm = -60.0;
  std::optional<double> n_degenerate;
  std::optional<double> n_pump;
  std::shared_ptr<const DispersionModel> dispersion;

  void validate() const;
  double degenerate_wavelength_nm() const { return 2.0 * lambda_pump_nm; }
  double resolved_n_degenerate() const;
  double resolved_n_pump() const;
};

/// quadratic: Delta k = GVD0 * nu^2 (second-order expansion around
/// degeneracy). exact_dispersion: Delta k from the attached dispersion
/// model, with the grating vector chosen so the device is matched at
/// degeneracy.
enum class JsaMode { quadratic, exact_dispersion };

namespace biphoton {

/// Phase mismatch at angular detuning nu (rad/s) from degeneracy, rad/m.
double delta_k(const SourceParams& params, double nu, JsaMode mode);

/// Joint spectral amplitude h = exp(-i L dk / 2) sinc(L dk / 2).
std::complex<double> jsa(const SourceParams& params, double nu, JsaMode mode);

/// First zero of |h| in the quadratic model: sqrt(2 pi / (L |GVD0|)).
double first_zero_nu(const SourceParams& params);

}  // namespace biphoton

/// Sampled emission spectrum |h|^2 over a wavelength window around 2
/// lambda_p. Keeps its source parameters so entries can be re-evaluated
/// analytically (used by the WDM channel integrals).
class BiphotonSpectrum {
 public:
  BiphotonSpectrum(SourceParams params, double lo_nm, double hi_nm,
                   int samples, JsaMode mode);

  JsaMode mode() const { return mode_; }
  double center_nm() const { return params_.degenerate_wavelength_nm(); }
  double min_nm() const { return lo_nm_; }
  double max_nm() const { return hi_nm_; }
  const SourceParams& params() const { return params_; }
  const std::vector<double>& wavelengths_nm() const { return wavelengths_; }
  const std::vector<double>& intensities() const { return intensities_; }

  double intensity_at_nu(double nu) const;
  double intensity_at_lambda(double lambda_nm) const;

  /// Detuning nu (rad/s) of the signal photon at the given wavelength.
  double nu_at_lambda(double lambda_nm) const;

 private:
  SourceParams params_;
  JsaMode mode_;
  double lo_nm_, hi_nm_;
  std::vector<double> wavelengths_, intensities_;
};

namespace biphoton {

BiphotonSpectrum spectrum(const SourceParams& params, double lo_nm,
                          double hi_nm, int samples, JsaMode mode);

/// Full width in nm between the outermost points with |h|^2 = 1/2, each
/// found by bisection to 0.01 nm.
double fwhm(const SourceParams& params, JsaMode mode);

struct PairRate {
  double hz = 0.0;         // at the configured pump power
  double hz_per_mw = 0.0;
};

/// Closed-form generation rate
///   R = 8 P d33^2 a^2 / (3 e0 c S lp^2 n0^2 np) * sqrt(2 pi L^3 / |GVD0|).
PairRate pair_rate_closed(const SourceParams& params);

/// Rate as |A|^2 * integral of |h|^2 over nu in +/- window_zeros first
/// zeros, adaptive quadrature with relative error < 1e-6.
PairRate pair_rate_numeric(const SourceParams& params,
                           JsaMode mode = JsaMode::quadratic,
                           double window_zeros = 20.0);

struct SpectrumSample {
  double lambda_nm;
  double counts;
  double error;
};

/// Weighted least-squares fit of A sinc^2(2 pi^2 c^2 |g| (1/l - 1/lc)^2)
/// with g = L*GVD0 (fs^2), amplitude and center free.
struct SincSpectrumFit {
  double amplitude = 0.0;
  double l_gvd_fs2 = 0.0;   // |L * GVD0|
  double center_nm = 0.0;
  double amplitude_sigma = 0.0;
  double l_gvd_sigma = 0.0;
  double center_sigma = 0.0;
  bool converged = false;

  double model(double lambda_nm) const;
  double fwhm_nm() const;
};

SincSpectrumFit fit_sinc_spectrum(const std::vector<SpectrumSample>& samples);

/// Argument where sinc^2 drops to one half (used by fits and width math).
double half_max_sinc_argument();

}  // namespace biphoton
}  // namespace spdc
