#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spdc {

/// Folded (single-interferometer) Franson measurement. Valid operation
/// needs T_c1 << arm imbalance << T_c2 and a coincidence window smaller
/// than the imbalance; margins are computed on construction.
struct FransonConfig {
  double arm_imbalance_ns = 1.5;
  double window_ps = 256.0;
  double single_photon_coherence_ps = 9.0;
  double pump_coherence_us = 1.0;
  double visibility = 1.0;         // intrinsic fringe visibility
  double base_rate_hz = 1000.0;    // post-selected pair rate
  double accidental_hz = 0.0;

  /// ratio of arm imbalance to single-photon coherence time.
  double lower_margin() const;
  /// ratio of pump coherence time to arm imbalance.
  double upper_margin() const;
  /// true when both margins exceed `factor` and window < imbalance.
  bool conditions_met(double factor = 100.0) const;

  void validate() const;
};

namespace franson {

/// Fourier-limit single-photon coherence time from filter bandwidth:
/// T_c = lambda0^2 / (c * dlambda), in ps.
double coherence_time_from_bandwidth(double bandwidth_nm, double lambda0_nm);

/// Coincidence counts in the three arrival-time bins at delays
/// -dT, 0, +dT. Expected weights: each side peak base/4, central peak
/// base/2 (1 + V cos phi); accidentals add uniformly to all bins.
struct TimingHistogram {
  uint64_t long_short = 0;   // -dT
  uint64_t central = 0;      //  0
  uint64_t short_long = 0;   // +dT
  double expected_side = 0.0;
  double expected_central = 0.0;
};

TimingHistogram timing_histogram(const FransonConfig& cfg, double phase_rad,
                                 double visibility, double duration_s,
                                 uint64_t seed);

/// Post-selected central-peak rate: base/2 (1 + V cos phi) + accidental.
double fringe(const FransonConfig& cfg, double phase_rad);

struct ScanPoint {
  double phase_rad;
  double counts;
  double error;
  double fit_value;
};

struct FringeFit {
  double visibility = 0.0;
  double visibility_sigma = 0.0;
  double phase_offset_rad = 0.0;
  double baseline = 0.0;    // a in a + b cos(phi - phi0)
  double amplitude = 0.0;   // b
  std::vector<ScanPoint> points;

  std::string summary() const;
};

/// Simulates Poisson counts from the fringe model at each phase, then fits
/// a + b cos(phi - phi0) by weighted least squares (weights 1/counts,
/// Poisson errors). V = b/a with first-order error propagation.
FringeFit scan_and_fit(const FransonConfig& cfg,
                       const std::vector<double>& phase_schedule_rad,
                       double duration_per_point_s, uint64_t seed);

/// Fit of already-measured counts (same model and weighting).
FringeFit fit_fringe(const std::vector<double>& phases_rad,
                     const std::vector<double>& counts);

/// Background-capped visibility V_obs = V * S / (S + 2B) with S = base/2
/// and B the accidental rate.
double visibility_from_background(double intrinsic_visibility,
                                  double base_rate_hz, double accidental_hz);

}  // namespace franson
}  // namespace spdc
