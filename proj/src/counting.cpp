#include "spdc/counting.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spdc/constants.hpp"

namespace spdc {

void DetectorModel::validate() const {
  if (!(efficiency_1 >= 0.0 && efficiency_1 <= 1.0) ||
      !(efficiency_2 >= 0.0 && efficiency_2 <= 1.0))
    throw std::invalid_argument("detector: efficiency outside [0, 1]");
  if (dark_hz < 0.0) throw std::invalid_argument("detector: negative dark rate");
  if (!(window_ps > 0.0))
    throw std::invalid_argument("detector: coincidence window <= 0");
}

namespace counting {

CountingResult simulate_counts(double pair_rate_hz, const DetectorModel& det,
                               double duration_s, uint64_t seed) {
  det.validate();
  if (pair_rate_hz < 0.0)
    throw std::invalid_argument("simulate_counts: negative pair rate");
  if (!(duration_s > 0.0))
    throw std::invalid_argument("simulate_counts: duration <= 0");

  const double lambda1 = det.efficiency_1 * pair_rate_hz + det.dark_hz;
  const double lambda2 = det.efficiency_2 * pair_rate_hz + det.dark_hz;
  const double true_cc = det.efficiency_1 * det.efficiency_2 * pair_rate_hz;
  const double accidental = lambda1 * lambda2 * det.window_ps * kPs;

  Rng rng(seed);
  CountingResult r;
  r.duration_s = duration_s;
  r.counts_1 = rng.poisson(lambda1 * duration_s);
  r.counts_2 = rng.poisson(lambda2 * duration_s);
  const uint64_t true_counts = rng.poisson(true_cc * duration_s);
  r.counts_accidental = rng.poisson(accidental * duration_s);
  r.counts_coincidence = true_counts + r.counts_accidental;
  return r;
}

double estimate_pair_rate(double r1_hz, double r2_hz, double rcc_hz,
                          double rac_hz, double pump_power_mw) {
  if (!(rcc_hz > rac_hz))
    throw std::invalid_argument("estimate_pair_rate: Rcc must exceed Rac");
  if (!(pump_power_mw > 0.0))
    throw std::invalid_argument("estimate_pair_rate: pump power <= 0");
  return r1_hz * r2_hz / (rcc_hz - rac_hz) / pump_power_mw;
}

double car(double rcc_hz, double rac_hz) {
  if (rac_hz < 0.0) throw std::invalid_argument("car: negative accidentals");
  if (rac_hz == 0.0) return std::numeric_limits<double>::infinity();
  return rcc_hz / rac_hz;
}

double heralding_efficiency(double rcc_hz, double rac_hz,
                            double heralding_arm_hz) {
  if (!(heralding_arm_hz > 0.0))
    throw std::invalid_argument("heralding_efficiency: arm rate <= 0");
  return (rcc_hz - rac_hz) / heralding_arm_hz;
}

double spectral_brightness(double r1_hz, double r2_hz, double rcc_hz,
                           double rac_hz, double pump_power_mw,
                           double bandwidth_nm) {
  if (!(bandwidth_nm > 0.0))
    throw std::invalid_argument("spectral_brightness: bandwidth <= 0");
  return estimate_pair_rate(r1_hz, r2_hz, rcc_hz, rac_hz, pump_power_mw) /
         bandwidth_nm;
}

std::vector<EnsembleRun> run_ensemble(double pair_rate_hz,
                                      const DetectorModel& det,
                                      double duration_s, double pump_power_mw,
                                      uint64_t first_seed, int runs) {
  std::vector<EnsembleRun> out;
  out.reserve(runs);
  for (int i = 0; i < runs; ++i) {
    EnsembleRun run;
    run.seed = first_seed + i;
    run.result = simulate_counts(pair_rate_hz, det, duration_s, run.seed);
    run.n_estimate_hz_per_mw =
        estimate_pair_rate(run.result.r1_hz(), run.result.r2_hz(),
                           run.result.rcc_hz(), run.result.rac_hz(),
                           pump_power_mw);
    out.push_back(run);
  }
  return out;
}

std::string ensemble_csv(const std::vector<EnsembleRun>& runs) {
  std::ostringstream os;
  os << "seed,R1,R2,Rcc,Rac,N_est\n";
  os.precision(10);
  for (const auto& r : runs) {
    os << r.seed << ',' << r.result.r1_hz() << ',' << r.result.r2_hz() << ','
       << r.result.rcc_hz() << ',' << r.result.rac_hz() << ','
       << r.n_estimate_hz_per_mw << '\n';
  }
  return os.str();
}

}  // namespace counting
}  // namespace spdc
