#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "spdc/constants.hpp"
#include "spdc/franson.hpp"

using namespace spdc;
using namespace spdc::franson;

namespace {

FransonConfig clean_config(double visibility = 1.0, double base = 1000.0,
                           double accidental = 0.0) {
  FransonConfig cfg;
  cfg.visibility = visibility;
  cfg.base_rate_hz = base;
  cfg.accidental_hz = accidental;
  cfg.single_photon_coherence_ps =
      coherence_time_from_bandwidth(0.8, 1471.52);
  return cfg;
}

std::vector<double> phase_grid(int n = 16) {
  std::vector<double> phases;
  for (int i = 0; i < n; ++i) phases.push_back(2.0 * kPi * i / (n - 1));
  return phases;
}

}  // namespace

TEST_CASE("coherence time from the filter bandwidth") {
  const double tc = coherence_time_from_bandwidth(0.8, 1471.52);
  CHECK(tc == doctest::Approx(9.0286).epsilon(1e-3));
  // halving the bandwidth doubles the coherence time exactly
  CHECK(coherence_time_from_bandwidth(0.4, 1471.52) ==
        doctest::Approx(2.0 * tc).epsilon(1e-14));
  CHECK_THROWS(coherence_time_from_bandwidth(0.0, 1471.52));
}

TEST_CASE("validity margins at the published operating point") {
  const auto cfg = clean_config();
  CHECK(cfg.lower_margin() == doctest::Approx(166.14).epsilon(1e-3));
  CHECK(cfg.lower_margin() > 100.0);
  CHECK(cfg.upper_margin() == doctest::Approx(1000.0 / 1.5).epsilon(1e-12));
  CHECK(cfg.conditions_met());

  auto bad = cfg;
  bad.single_photon_coherence_ps = 20.0;  // dT / T_c1 only 75
  CHECK_FALSE(bad.conditions_met());
  bad = cfg;
  bad.window_ps = 2000.0;  // window exceeds the imbalance
  CHECK_FALSE(bad.conditions_met());
}

TEST_CASE("fringe values at the cardinal phases") {
  const auto cfg = clean_config(1.0, 1000.0, 0.0);
  CHECK(fringe(cfg, 0.0) == 1000.0);  // constructive maximum = base
  CHECK(fringe(cfg, kPi) == doctest::Approx(0.0).scale(1000.0));
  for (double v : {0.0, 0.3, 0.9}) {
    auto c = clean_config(v, 1000.0, 7.0);
    CHECK(fringe(c, kPi / 2.0) == doctest::Approx(507.0).epsilon(1e-12));
  }
}

TEST_CASE("fringe complementarity identity") {
  const auto cfg = clean_config(0.87, 800.0, 11.0);
  // exact at phase zero: cos(0) = 1 and cos(pi) = -1 in floating point
  CHECK(fringe(cfg, 0.0) + fringe(cfg, kPi) == 800.0 + 2.0 * 11.0);
  for (double phi = -6.0; phi <= 6.0; phi += 0.37) {
    CHECK(fringe(cfg, phi) + fringe(cfg, phi + kPi) ==
          doctest::Approx(800.0 + 22.0).epsilon(1e-12));
  }
}

TEST_CASE("fringe is 2 pi periodic to machine precision") {
  const auto cfg = clean_config(0.9917, 1000.0, 2.0);
  for (double phi = 0.0; phi < 6.3; phi += 0.31)
    CHECK(fringe(cfg, phi + 2.0 * kPi) ==
          doctest::Approx(fringe(cfg, phi)).epsilon(1e-12));
}

TEST_CASE("timing histogram: perfect destructive interference empties the central bin") {
  const auto cfg = clean_config(1.0, 1000.0, 0.0);
  const auto h = timing_histogram(cfg, kPi, 1.0, 10.0, 99);
  CHECK(h.expected_central == 0.0);
  CHECK(h.central == 0);
  CHECK(h.expected_side == doctest::Approx(2500.0));
  CHECK(h.long_short > 0);
  CHECK(h.short_long > 0);
}

TEST_CASE("timing histogram: incoherent case has the 1:2:1 structure") {
  const auto cfg = clean_config(1.0, 1000.0, 0.0);
  const auto h = timing_histogram(cfg, 0.3, 0.0, 5.0, 17);
  CHECK(h.expected_central == 2.0 * h.expected_side);
}

TEST_CASE("timing histogram: constructive maximum is 4x one side peak") {
  const auto cfg = clean_config(1.0, 1000.0, 0.0);
  const auto h = timing_histogram(cfg, 0.0, 1.0, 5.0, 21);
  CHECK(h.expected_central == 4.0 * h.expected_side);
  // ensemble check of the realized counts
  double central = 0.0, sides = 0.0;
  for (int seed = 0; seed < 60; ++seed) {
    const auto hh = timing_histogram(cfg, 0.0, 1.0, 1.0, seed);
    central += hh.central;
    sides += hh.long_short + hh.short_long;
  }
  CHECK(std::abs(central - 2.0 * sides) < 3.0 * std::sqrt(central + 4.0 * sides));
}

TEST_CASE("timing histogram side bins are phase independent") {
  const auto cfg = clean_config(1.0, 2000.0, 3.0);
  const auto a = timing_histogram(cfg, 0.0, 1.0, 1.0, 5);
  const auto b = timing_histogram(cfg, kPi, 1.0, 1.0, 5);
  CHECK(a.expected_side == b.expected_side);
  double s0 = 0.0, s1 = 0.0;
  const int n = 100;
  for (int seed = 0; seed < n; ++seed) {
    const auto ha = timing_histogram(cfg, 0.0, 1.0, 1.0, seed);
    const auto hb = timing_histogram(cfg, kPi, 1.0, 1.0, 1000 + seed);
    s0 += ha.long_short + ha.short_long;
    s1 += hb.long_short + hb.short_long;
  }
  CHECK(std::abs(s0 - s1) < 3.0 * std::sqrt(s0 + s1));
}

TEST_CASE("timing histogram validates the visibility") {
  const auto cfg = clean_config();
  CHECK_THROWS(timing_histogram(cfg, 0.0, 1.5, 1.0, 1));
}

TEST_CASE("noiseless fit recovers the fringe parameters to 1e-6") {
  const auto cfg = clean_config(0.9917, 1000.0, 2.0);
  const auto phases = phase_grid(24);
  std::vector<double> counts;
  for (double phi : phases) counts.push_back(fringe(cfg, phi) * 10.0);
  const auto fit = fit_fringe(phases, counts);
  // the fitted fringe dilutes as b/a = V S / (S + B)
  const double s = cfg.base_rate_hz / 2.0;
  const double v_expected =
      cfg.visibility * s / (s + cfg.accidental_hz);
  CHECK(fit.visibility == doctest::Approx(v_expected).epsilon(1e-6));
  CHECK(fit.baseline ==
        doctest::Approx((cfg.base_rate_hz / 2.0 + cfg.accidental_hz) * 10.0)
            .epsilon(1e-6));
  CHECK(std::abs(fit.phase_offset_rad) < 1e-6);
}

TEST_CASE("visibility coverage at the published maximum") {
  const auto cfg = clean_config(0.9917, 1000.0, 0.0);
  const auto phases = phase_grid();
  int covered = 0;
  const int trials = 100;
  for (int seed = 1; seed <= trials; ++seed) {
    const auto fit = scan_and_fit(cfg, phases, 10.0, seed);
    if (std::abs(fit.visibility - 0.9917) <= 3.0 * fit.visibility_sigma)
      ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("null fringe recovers |V| below 3 sigma") {
  const auto cfg = clean_config(0.0, 1000.0, 0.0);
  const auto phases = phase_grid();
  int covered = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    const auto fit = scan_and_fit(cfg, phases, 10.0, seed);
    if (std::abs(fit.visibility) < 3.0 * fit.visibility_sigma) ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("raising the baseline dilutes the fitted visibility as b/a") {
  const auto cfg = clean_config(0.9, 1000.0, 0.0);
  const auto phases = phase_grid(24);
  std::vector<double> counts, diluted;
  const double t = 10.0;
  for (double phi : phases) {
    const double a = cfg.base_rate_hz / 2.0;
    const double b = cfg.visibility * cfg.base_rate_hz / 2.0;
    counts.push_back((a + b * std::cos(phi)) * t);
    diluted.push_back((1.1 * a + b * std::cos(phi)) * t);
  }
  const auto f0 = fit_fringe(phases, counts);
  const auto f1 = fit_fringe(phases, diluted);
  CHECK(f1.visibility ==
        doctest::Approx(f0.visibility / 1.1).epsilon(0.01));
}

TEST_CASE("scan_and_fit input validation") {
  const auto cfg = clean_config();
  CHECK_THROWS(scan_and_fit(cfg, {0.0, 1.0, 2.0}, 1.0, 1));  // too few
  std::vector<double> flat(8, 1.0);                          // degenerate
  CHECK_THROWS(scan_and_fit(cfg, flat, 1.0, 1));
  std::vector<double> narrow{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5};
  CHECK_THROWS(scan_and_fit(cfg, narrow, 1.0, 1));  // less than one period
}

TEST_CASE("background-capped visibility") {
  CHECK(visibility_from_background(0.93, 1000.0, 0.0) == 0.93);
  CHECK(visibility_from_background(1.0, 2.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // background at the published coincidence-to-accidental scale
  const double v = visibility_from_background(1.0, 4792.0 - 8.0, 8.0);
  CHECK(v >= 0.99);
}

TEST_CASE("fitted visibility exceeds the Bell bound at the published scale") {
  const auto cfg = clean_config(0.9917, 1000.0, 2.0);
  const auto fit = scan_and_fit(cfg, phase_grid(), 10.0, 424242);
  CHECK(fit.visibility > 1.0 / std::sqrt(2.0));
}

TEST_CASE("franson config validation") {
  auto cfg = clean_config();
  cfg.visibility = 1.2;
  CHECK_THROWS(cfg.validate());
  cfg = clean_config();
  cfg.arm_imbalance_ns = 0.0;
  CHECK_THROWS(cfg.validate());
  cfg = clean_config();
  cfg.accidental_hz = -1.0;
  CHECK_THROWS(cfg.validate());
}
