#pragma once

#include "spdc/dispersion.hpp"

namespace spdc {

/// Periodic poling of the chi(2) sign: period, mark-to-space ratio,
/// interaction length and the QPM order used for the reciprocal vector.
struct PolingSpec {
  double period_um = 4.0;
  double duty_cycle = 0.5;
  double length_mm = 6.0;
  int order = 1;

  void validate() const;
  /// m-th reciprocal G_m = 2 pi m / period, rad/m.
  double reciprocal() const;
};

namespace qpm {

/// Magnitude of the m-th Fourier coefficient of a two-level +/-1 poling
/// profile with duty cycle D: (2 / m pi) * |sin(m pi D)|.
double fourier_coefficient(int m, double duty_cycle);

/// Delta k = k_p - k_s - k_i - G_m, rad/m. Wavelengths must satisfy energy
/// conservation 1/lp = 1/ls + 1/li to 1e-6 relative.
double phase_mismatch(const DispersionModel& pump, const DispersionModel& signal,
                      const DispersionModel& idler, double lambda_pump_nm,
                      double lambda_signal_nm, double lambda_idler_nm,
                      const PolingSpec& poling);

/// Poling period (um) that phase-matches degenerate SPDC of the given pump:
/// Lambda = 2 pi m / (k_p - 2 k_s) with k_s evaluated at 2 lambda_p.
double solve_poling_period(const DispersionModel& pump,
                           const DispersionModel& half_harmonic,
                           double lambda_pump_nm, int order);

/// Degenerate (signal = idler) wavelength at which a given poling is
/// phase-matched, by bisection of Delta k over [lo, hi] to 0.01 nm.
double solve_degenerate_wavelength(const DispersionModel& pump,
                                   const DispersionModel& half_harmonic,
                                   const PolingSpec& poling, double lo_nm,
                                   double hi_nm);

}  // namespace qpm
}  // namespace spdc
