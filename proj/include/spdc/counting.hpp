#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdc/random.hpp"

namespace spdc {

/// Two-arm detection chain: per-arm total efficiency (fiber coupling
/// included), dark counts per detector, and the coincidence window.
struct DetectorModel {
  double efficiency_1 = 0.70;
  double efficiency_2 = 0.70;
  double dark_hz = 3500.0;
  double window_ps = 256.0;

  void validate() const;
};

struct CountingResult {
  double duration_s = 0.0;
  uint64_t counts_1 = 0;
  uint64_t counts_2 = 0;
  uint64_t counts_coincidence = 0;  // true + accidental
  uint64_t counts_accidental = 0;

  double r1_hz() const { return counts_1 / duration_s; }
  double r2_hz() const { return counts_2 / duration_s; }
  double rcc_hz() const { return counts_coincidence / duration_s; }
  double rac_hz() const { return counts_accidental / duration_s; }
};

namespace counting {

/// Forward model: singles lambda_i = eta_i R + dark, true coincidences
/// eta1 eta2 R, accidentals lambda1 lambda2 dt; each realized as a Poisson
/// draw over the duration from the seeded generator.
CountingResult simulate_counts(double pair_rate_hz, const DetectorModel& det,
                               double duration_s, uint64_t seed);

/// On-chip pair rate estimator N = R1 R2 / (Rcc - Rac) per mW of pump.
double estimate_pair_rate(double r1_hz, double r2_hz, double rcc_hz,
                          double rac_hz, double pump_power_mw);

/// Coincidence-to-accidental ratio. Rac = 0 returns +infinity.
double car(double rcc_hz, double rac_hz);

/// (Rcc - Rac) / R_heralding_arm. The published 3.8% figure divides by the
/// R1 = 126 kHz arm.
double heralding_efficiency(double rcc_hz, double rac_hz,
                            double heralding_arm_hz);

/// estimate_pair_rate per nm of bandwidth (Hz/nm/mW).
double spectral_brightness(double r1_hz, double r2_hz, double rcc_hz,
                           double rac_hz, double pump_power_mw,
                           double bandwidth_nm);

struct EnsembleRun {
  uint64_t seed;
  CountingResult result;
  double n_estimate_hz_per_mw;
};

std::vector<EnsembleRun> run_ensemble(double pair_rate_hz,
                                      const DetectorModel& det,
                                      double duration_s, double pump_power_mw,
                                      uint64_t first_seed, int runs);

/// "seed,R1,R2,Rcc,Rac,N_est" rows.
std::string ensemble_csv(const std::vector<EnsembleRun>& runs);

}  // namespace counting
}  // namespace spdc
