#include <doctest.h>

#include <string>

#include "spdc/biphoton.hpp"
#include "spdc/scenario.hpp"

using namespace spdc;

TEST_CASE("empty file yields the pure defaults") {
  const auto s = scenario::parse("");
  CHECK(s.source.lambda_pump_nm == 735.76);
  CHECK(s.source.pump_power_mw == 1.0);
  CHECK(s.source.mode_area_um2 == 1.26);
  CHECK(s.source.gvd0_fs2_per_mm == -60.0);
  REQUIRE(s.source.n_degenerate.has_value());
  CHECK(*s.source.n_degenerate == 1.97);
  CHECK(*s.source.n_pump == doctest::Approx(2.15394).epsilon(1e-12));
  CHECK(s.poling.period_um == 4.0);
  CHECK(s.detector.dark_hz == 3500.0);
  CHECK(s.detector.window_ps == 256.0);
  CHECK(s.channels.width_nm == 0.8);
  CHECK(s.channels.accidental_floor == 5e-5);
  CHECK(s.franson.arm_imbalance_ns == 1.5);
  CHECK(s.franson.single_photon_coherence_ps ==
        doctest::Approx(9.0286).epsilon(1e-3));
  const auto blank = scenario::parse("  \n\t\n");
  CHECK(blank.seed == s.seed);
}

TEST_CASE("single override leaves everything else at defaults") {
  const auto s =
      scenario::parse(R"({"source": {"pump_power_mw": 2.0}})");
  CHECK(s.source.pump_power_mw == 2.0);
  CHECK(s.source.lambda_pump_nm == 735.76);
  CHECK(s.source.mode_area_um2 == 1.26);
  CHECK(s.channels.count == 8);
}

TEST_CASE("unknown keys are hard errors that name the key") {
  CHECK_THROWS_WITH_AS(
      scenario::parse(R"({"source": {"pump_powr": 2.0}})"),
      doctest::Contains("pump_powr"), std::runtime_error);
  CHECK_THROWS_WITH_AS(scenario::parse(R"({"sorce": {}})"),
                       doctest::Contains("sorce"), std::runtime_error);
}

TEST_CASE("parse failures carry line and column") {
  CHECK_THROWS_WITH_AS(scenario::parse("{\n  \"seed\": ,\n}"),
                       doctest::Contains("line 2"), std::runtime_error);
}

TEST_CASE("schema version is checked") {
  CHECK_NOTHROW(scenario::parse(R"({"schema_version": 1})"));
  CHECK_THROWS_WITH_AS(scenario::parse(R"({"schema_version": 2})"),
                       doctest::Contains("schema_version"),
                       std::runtime_error);
}

TEST_CASE("null index overrides fall back to the bulk fill") {
  const auto s = scenario::parse(
      R"({"source": {"n_degenerate": null, "n_pump": null}})");
  CHECK_FALSE(s.source.n_degenerate.has_value());
  CHECK_FALSE(s.source.n_pump.has_value());
  // bulk-index fill drives the closed-form rate to the bulk value
  const auto rate = biphoton::pair_rate_closed(s.source);
  CHECK(rate.hz_per_mw == doctest::Approx(7.0806065e11).epsilon(1e-6));
}

TEST_CASE("invariant violations carry the field") {
  CHECK_THROWS_WITH_AS(
      scenario::parse(R"({"poling": {"duty_cycle": 1.5}})"),
      doctest::Contains("duty"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      scenario::parse(R"({"detector": {"efficiency_1": 1.4}})"),
      doctest::Contains("efficiency"), std::runtime_error);
}

TEST_CASE("type errors are rejected with the path") {
  CHECK_THROWS_WITH_AS(
      scenario::parse(R"({"source": {"pump_power_mw": "high"}})"),
      doctest::Contains("source.pump_power_mw"), std::runtime_error);
  CHECK_THROWS_WITH_AS(scenario::parse(R"({"seed": -4})"),
                       doctest::Contains("seed"), std::runtime_error);
  CHECK_THROWS_WITH_AS(scenario::parse(R"({"source": 3})"),
                       doctest::Contains("source"), std::runtime_error);
}

TEST_CASE("coherence time follows the channel width") {
  const auto s = scenario::parse(R"({"channels": {"width_nm": 0.4}})");
  CHECK(s.franson.single_photon_coherence_ps ==
        doctest::Approx(2.0 * 9.0286).epsilon(1e-3));
}

TEST_CASE("json round trip preserves the scenario") {
  auto s = Scenario::paper_defaults();
  s.seed = 777;
  s.source.pump_power_mw = 0.5;
  s.channels.count = 4;
  const auto text = scenario::to_json(s);
  const auto back = scenario::parse(text);
  CHECK(back.seed == 777);
  CHECK(back.source.pump_power_mw == 0.5);
  CHECK(back.channels.count == 4);
  CHECK(back.source.lambda_pump_nm == s.source.lambda_pump_nm);
  CHECK(*back.source.n_pump == *s.source.n_pump);
  CHECK(back.franson.visibility == s.franson.visibility);
}

TEST_CASE("scenario-level validation still applies") {
  CHECK_THROWS(scenario::parse(R"({"franson": {"phase_points": 3}})"));
}
