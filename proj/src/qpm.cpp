#include "spdc/qpm.hpp"

#include <cmath>
#include <stdexcept>

#include "spdc/constants.hpp"
#include "spdc/numeric.hpp"

namespace spdc {

void PolingSpec::validate() const {
  if (!(period_um > 0.0)) throw std::invalid_argument("poling: period <= 0");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0))
    throw std::invalid_argument("poling: duty cycle outside (0, 1)");
  if (!(length_mm > 0.0)) throw std::invalid_argument("poling: length <= 0");
  if (order < 1) throw std::invalid_argument("poling: order < 1");
}

double PolingSpec::reciprocal() const {
  return 2.0 * kPi * order / (period_um * kUm);
}

namespace qpm {

double fourier_coefficient(int m, double duty_cycle) {
  if (m < 1) throw std::invalid_argument("fourier_coefficient: m < 1");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0))
    throw std::invalid_argument("fourier_coefficient: duty cycle outside (0, 1)");
  return 2.0 / (m * kPi) * std::abs(std::sin(m * kPi * duty_cycle));
}

double phase_mismatch(const DispersionModel& pump, const DispersionModel& signal,
                      const DispersionModel& idler, double lambda_pump_nm,
                      double lambda_signal_nm, double lambda_idler_nm,
                      const PolingSpec& poling) {
  poling.validate();
  const double lhs = 1.0 / lambda_pump_nm;
  const double rhs = 1.0 / lambda_signal_nm + 1.0 / lambda_idler_nm;
  if (std::abs(lhs - rhs) > 1e-6 * lhs)
    throw std::invalid_argument(
        "phase_mismatch: wavelengths violate energy conservation");
  return pump.wavevector(lambda_pump_nm) - signal.wavevector(lambda_signal_nm) -
         idler.wavevector(lambda_idler_nm) - poling.reciprocal();
}

double solve_poling_period(const DispersionModel& pump,
                           const DispersionModel& half_harmonic,
                           double lambda_pump_nm, int order) {
  if (order < 1) throw std::invalid_argument("solve_poling_period: order < 1");
  const double kp = pump.wavevector(lambda_pump_nm);
  const double ks = half_harmonic.wavevector(2.0 * lambda_pump_nm);
  const double excess = kp - 2.0 * ks;
  if (!(excess > 0.0))
    throw std::invalid_argument(
        "solve_poling_period: k_p <= 2 k_s, no forward QPM solution");
  return 2.0 * kPi * order / excess / kUm;
}

double solve_degenerate_wavelength(const DispersionModel& pump,
                                   const DispersionModel& half_harmonic,
                                   const PolingSpec& poling, double lo_nm,
                                   double hi_nm) {
  poling.validate();
  auto mismatch_at_degeneracy = [&](double lambda_deg_nm) {
    return pump.wavevector(lambda_deg_nm / 2.0) -
           2.0 * half_harmonic.wavevector(lambda_deg_nm) - poling.reciprocal();
  };
  return numeric::bisect(mismatch_at_degeneracy, lo_nm, hi_nm, 0.01);
}

}  // namespace qpm
}  // namespace spdc
