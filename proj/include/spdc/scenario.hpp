#pragma once

#include <cstdint>
#include <string>

#include "spdc/biphoton.hpp"
#include "spdc/counting.hpp"
#include "spdc/franson.hpp"
#include "spdc/qpm.hpp"

namespace spdc {

/// WDM bank layout used by the reproduce run: `count` matched channel
/// pairs spaced `spacing_nm` apart around the degenerate wavelength.
struct ChannelPlan {
  int count = 8;
  double spacing_nm = 8.0;
  double width_nm = 0.8;
  double insertion_loss_db = 3.0;
  double extinction_db = 60.0;
  double accidental_floor = 5e-5;  // relative to the matrix peak

  void validate() const;
};

/// Aggregated run configuration. Defaults reproduce the published source:
/// 735.76 nm pump, 4 um poling over 6 mm, GVD0 = -60 fs^2/mm, waveguide
/// effective indices n0 = 1.97 and np = n0 + lambda_p / poling period, 0.8 nm
/// WDM bins with 3 dB insertion loss and 60 dB extinction, SNSPDs at 70%
/// with 3500 Hz dark counts and a 256 ps window, and a 1.5 ns Franson
/// imbalance.
struct Scenario {
  uint64_t seed = 20200401;
  std::string output_dir = "out";
  SourceParams source;
  PolingSpec poling;
  DetectorModel detector;
  ChannelPlan channels;
  FransonConfig franson;
  int franson_phase_points = 16;
  double franson_duration_per_point_s = 10.0;

  static Scenario paper_defaults();

  void validate() const;
};

namespace scenario {

/// Strict parser: unknown keys are hard errors (with their path), parse
/// failures carry line/column, section values must be objects. An empty or
/// whitespace-only file yields the pure paper defaults.
Scenario parse(const std::string& json_text,
               const std::string& origin = "scenario");

Scenario load_file(const std::string& path);

/// The current schema as a JSON document (used by `--print-config`).
std::string to_json(const Scenario& s);

}  // namespace scenario
}  // namespace spdc
