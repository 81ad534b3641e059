#pragma once

#include <numbers>

namespace spdc {

inline constexpr double kSpeedOfLight = 299792458.0;        // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kPi = std::numbers::pi;

// Unit conversions. Public APIs speak nm / mm / um / ps / fs^2/mm to match
// lab conventions; everything internal is SI.
inline constexpr double kNm = 1e-9;     // nm -> m
inline constexpr double kUm = 1e-6;     // um -> m
inline constexpr double kMm = 1e-3;     // mm -> m
inline constexpr double kPs = 1e-12;    // ps -> s
inline constexpr double kNs = 1e-9;     // ns -> s
inline constexpr double kUs = 1e-6;     // us -> s
inline constexpr double kFs2PerMm = 1e-27;  // fs^2/mm -> s^2/m

inline double angular_frequency(double lambda_m) {
  return 2.0 * kPi * kSpeedOfLight / lambda_m;
}

inline double wavelength_from_omega(double omega) {
  return 2.0 * kPi * kSpeedOfLight / omega;
}

}  // namespace spdc
