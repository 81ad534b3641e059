#include "spdc/franson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "spdc/constants.hpp"
#include "spdc/numeric.hpp"
#include "spdc/random.hpp"

namespace spdc {

double FransonConfig::lower_margin() const {
  return arm_imbalance_ns * kNs / (single_photon_coherence_ps * kPs);
}

double FransonConfig::upper_margin() const {
  return pump_coherence_us * kUs / (arm_imbalance_ns * kNs);
}

bool FransonConfig::conditions_met(double factor) const {
  return lower_margin() > factor && upper_margin() > factor &&
         window_ps * kPs < arm_imbalance_ns * kNs;
}

void FransonConfig::validate() const {
  if (!(arm_imbalance_ns > 0.0))
    throw std::invalid_argument("franson: arm imbalance <= 0");
  if (!(window_ps > 0.0))
    throw std::invalid_argument("franson: coincidence window <= 0");
  if (!(single_photon_coherence_ps > 0.0))
    throw std::invalid_argument("franson: coherence time <= 0");
  if (!(pump_coherence_us > 0.0))
    throw std::invalid_argument("franson: pump coherence <= 0");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("franson: visibility outside [0, 1]");
  if (base_rate_hz < 0.0 || accidental_hz < 0.0)
    throw std::invalid_argument("franson: negative rate");
}

namespace franson {

double coherence_time_from_bandwidth(double bandwidth_nm, double lambda0_nm) {
  if (!(bandwidth_nm > 0.0))
    throw std::invalid_argument("coherence_time: bandwidth <= 0");
  const double lambda0 = lambda0_nm * kNm;
  return lambda0 * lambda0 / (kSpeedOfLight * bandwidth_nm * kNm) / kPs;
}

TimingHistogram timing_histogram(const FransonConfig& cfg, double phase_rad,
                                 double visibility, double duration_s,
                                 uint64_t seed) {
  cfg.validate();
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("timing_histogram: visibility outside [0, 1]");
  if (!(duration_s > 0.0))
    throw std::invalid_argument("timing_histogram: duration <= 0");

  const double side = cfg.base_rate_hz / 4.0;
  const double central =
      cfg.base_rate_hz / 2.0 * (1.0 + visibility * std::cos(phase_rad));
  TimingHistogram h;
  h.expected_side = (side + cfg.accidental_hz) * duration_s;
  h.expected_central = (central + cfg.accidental_hz) * duration_s;
  Rng rng(seed);
  h.long_short = rng.poisson(h.expected_side);
  h.central = rng.poisson(h.expected_central);
  h.short_long = rng.poisson(h.expected_side);
  return h;
}

double fringe(const FransonConfig& cfg, double phase_rad) {
  cfg.validate();
  return cfg.base_rate_hz / 2.0 *
             (1.0 + cfg.visibility * std::cos(phase_rad)) +
         cfg.accidental_hz;
}

std::string FringeFit::summary() const {
  std::ostringstream os;
  os.precision(6);
  os << "visibility " << visibility << " +/- " << visibility_sigma
     << "\nphase_offset_rad " << phase_offset_rad << "\nbaseline " << baseline
     << "\namplitude " << amplitude << '\n';
  return os.str();
}

FringeFit fit_fringe(const std::vector<double>& phases_rad,
                     const std::vector<double>& counts) {
  if (phases_rad.size() != counts.size())
    throw std::invalid_argument("fit_fringe: size mismatch");
  if (phases_rad.size() < 6)
    throw std::invalid_argument("fit_fringe: need at least 6 phase points");
  const double span =
      *std::max_element(phases_rad.begin(), phases_rad.end()) -
      *std::min_element(phases_rad.begin(), phases_rad.end());
  if (!(span >= 2.0 * kPi * 0.999))
    throw std::invalid_argument(
        "fit_fringe: schedule must span at least one period");

  // Linear model a + c cos(phi) + d sin(phi); Poisson weights 1/max(n, 1).
  const auto n = static_cast<Eigen::Index>(phases_rad.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n), w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(phases_rad[i]);
    design(i, 2) = std::sin(phases_rad[i]);
    y[i] = counts[i];
    w[i] = 1.0 / std::max(counts[i], 1.0);
  }
  const auto fit = numeric::weighted_least_squares(design, y, w);
  const double a = fit.coefficients[0];
  const double c = fit.coefficients[1];
  const double d = fit.coefficients[2];
  const double b = std::hypot(c, d);
  if (!(a > 0.0))
    throw std::runtime_error("fit_fringe: non-positive fitted baseline");

  FringeFit out;
  out.baseline = a;
  out.amplitude = b;
  out.phase_offset_rad = std::atan2(d, c);
  out.visibility = b / a;

  // sigma_V by first-order propagation through V = hypot(c, d) / a.
  Eigen::Vector3d grad;
  if (b > 0.0) grad << -b / (a * a), c / (a * b), d / (a * b);
  else grad << 0.0, 1.0 / a, 1.0 / a;  // |dV/dc| = |dV/dd| = 1/a at b = 0
  out.visibility_sigma =
      std::sqrt(std::max(0.0, grad.dot(fit.covariance * grad)));

  out.points.reserve(phases_rad.size());
  for (size_t i = 0; i < phases_rad.size(); ++i) {
    const double fit_value = a + c * std::cos(phases_rad[i]) +
                             d * std::sin(phases_rad[i]);
    out.points.push_back({phases_rad[i], counts[i],
                          std::sqrt(std::max(counts[i], 1.0)), fit_value});
  }
  return out;
}

FringeFit scan_and_fit(const FransonConfig& cfg,
                       const std::vector<double>& phase_schedule_rad,
                       double duration_per_point_s, uint64_t seed) {
  cfg.validate();
  if (!(duration_per_point_s > 0.0))
    throw std::invalid_argument("scan_and_fit: duration <= 0");
  Rng rng(seed);
  std::vector<double> counts;
  counts.reserve(phase_schedule_rad.size());
  for (double phi : phase_schedule_rad)
    counts.push_back(static_cast<double>(
        rng.poisson(fringe(cfg, phi) * duration_per_point_s)));
  return fit_fringe(phase_schedule_rad, counts);
}

double visibility_from_background(double intrinsic_visibility,
                                  double base_rate_hz, double accidental_hz) {
  if (base_rate_hz < 0.0 || accidental_hz < 0.0)
    throw std::invalid_argument("visibility_from_background: negative rate");
  const double signal = base_rate_hz / 2.0;
  if (signal + accidental_hz == 0.0) return intrinsic_visibility;
  return intrinsic_visibility * signal / (signal + 2.0 * accidental_hz);
}

}  // namespace franson
}  // namespace spdc
