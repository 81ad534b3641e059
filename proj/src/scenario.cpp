#include "spdc/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spdc {

using nlohmann::json;

void ChannelPlan::validate() const {
  if (count < 1) throw std::invalid_argument("channels: count < 1");
  if (!(spacing_nm > 0.0))
    throw std::invalid_argument("channels: spacing <= 0");
  if (!(width_nm > 0.0)) throw std::invalid_argument("channels: width <= 0");
  if (!(extinction_db > 0.0))
    throw std::invalid_argument("channels: extinction must exceed 0 dB");
  if (accidental_floor < 0.0)
    throw std::invalid_argument("channels: negative accidental floor");
}

Scenario Scenario::paper_defaults() {
  Scenario s;
  // SourceParams/PolingSpec/DetectorModel/ChannelPlan defaults already carry
  // the published values; the effective indices and the Franson coherence
  // time are derived here.
  s.source.n_degenerate = 1.97;
  s.source.n_pump =
      1.97 + s.source.lambda_pump_nm * 1e-3 / s.poling.period_um;
  s.franson.single_photon_coherence_ps =
      franson::coherence_time_from_bandwidth(
          s.channels.width_nm, s.source.degenerate_wavelength_nm());
  s.franson.visibility = 0.9917;
  s.franson.base_rate_hz = 1000.0;
  s.franson.accidental_hz = 2.0;
  return s;
}

void Scenario::validate() const {
  source.validate();
  poling.validate();
  detector.validate();
  channels.validate();
  franson.validate();
  if (franson_phase_points < 6)
    throw std::invalid_argument("franson: need at least 6 phase points");
  if (!(franson_duration_per_point_s > 0.0))
    throw std::invalid_argument("franson: duration per point <= 0");
}

namespace scenario {

namespace {

[[noreturn]] void fail_at(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed,
                const std::string& origin) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return key == k;
        }) == allowed.end())
      fail_at(origin, "unknown key '" + (path.empty() ? key : path + "." + key) +
                          "'");
  }
}

double number_at(const json& obj, const char* key, double fallback,
                 const std::string& path, const std::string& origin) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    fail_at(origin, "field '" + path + "." + key + "' must be a number");
  return v.get<double>();
}

int int_at(const json& obj, const char* key, int fallback,
           const std::string& path, const std::string& origin) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    fail_at(origin, "field '" + path + "." + key + "' must be an integer");
  return v.get<int>();
}

const json* section(const json& obj, const char* key,
                    const std::string& origin) {
  if (!obj.contains(key)) return nullptr;
  const json& v = obj.at(key);
  if (!v.is_object())
    fail_at(origin, std::string("section '") + key + "' must be an object");
  return &v;
}

std::pair<int, int> line_column(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Scenario parse(const std::string& json_text, const std::string& origin) {
  Scenario s = Scenario::paper_defaults();

  const bool blank = std::all_of(json_text.begin(), json_text.end(),
                                 [](unsigned char c) { return std::isspace(c); });
  if (blank) return s;

  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(json_text, e.byte);
    fail_at(origin, "parse error at line " + std::to_string(line) +
                        ", column " + std::to_string(col));
  }
  if (!root.is_object()) fail_at(origin, "top level must be an object");

  check_keys(root, "",
             {"schema_version", "seed", "output_dir", "source", "poling",
              "detector", "channels", "franson"},
             origin);

  if (root.contains("schema_version")) {
    const json& v = root.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != 1)
      fail_at(origin, "unsupported schema_version (expected 1)");
  }
  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_unsigned() && !v.is_number_integer())
      fail_at(origin, "field 'seed' must be a non-negative integer");
    const auto raw = v.get<int64_t>();
    if (raw < 0) fail_at(origin, "field 'seed' must be a non-negative integer");
    s.seed = static_cast<uint64_t>(raw);
  }
  if (root.contains("output_dir")) {
    const json& v = root.at("output_dir");
    if (!v.is_string()) fail_at(origin, "field 'output_dir' must be a string");
    s.output_dir = v.get<std::string>();
  }

  if (const json* src = section(root, "source", origin)) {
    check_keys(*src, "source",
               {"pump_wavelength_nm", "pump_power_mw", "d33_pm_per_v",
                "overlap_alpha_sq", "mode_area_um2", "length_mm",
                "gvd0_fs2_per_mm", "n_degenerate", "n_pump"},
               origin);
    s.source.lambda_pump_nm = number_at(*src, "pump_wavelength_nm",
                                        s.source.lambda_pump_nm, "source",
                                        origin);
    s.source.pump_power_mw = number_at(*src, "pump_power_mw",
                                       s.source.pump_power_mw, "source",
                                       origin);
    s.source.d33_pm_per_v =
        number_at(*src, "d33_pm_per_v", s.source.d33_pm_per_v, "source",
                  origin);
    s.source.overlap_alpha_sq = number_at(
        *src, "overlap_alpha_sq", s.source.overlap_alpha_sq, "source", origin);
    s.source.mode_area_um2 = number_at(*src, "mode_area_um2",
                                       s.source.mode_area_um2, "source",
                                       origin);
    s.source.length_mm =
        number_at(*src, "length_mm", s.source.length_mm, "source", origin);
    s.source.gvd0_fs2_per_mm = number_at(
        *src, "gvd0_fs2_per_mm", s.source.gvd0_fs2_per_mm, "source", origin);
    // null resets to the bulk-Sellmeier fill; a number pins the index.
    for (const char* key : {"n_degenerate", "n_pump"}) {
      if (!src->contains(key)) continue;
      const json& v = src->at(key);
      auto& slot =
          (std::string(key) == "n_degenerate") ? s.source.n_degenerate
                                               : s.source.n_pump;
      if (v.is_null()) slot.reset();
      else if (v.is_number()) slot = v.get<double>();
      else
        fail_at(origin, std::string("field 'source.") + key +
                            "' must be a number or null");
    }
  }

  if (const json* pol = section(root, "poling", origin)) {
    check_keys(*pol, "poling", {"period_um", "duty_cycle", "length_mm", "order"},
               origin);
    s.poling.period_um =
        number_at(*pol, "period_um", s.poling.period_um, "poling", origin);
    s.poling.duty_cycle =
        number_at(*pol, "duty_cycle", s.poling.duty_cycle, "poling", origin);
    s.poling.length_mm =
        number_at(*pol, "length_mm", s.poling.length_mm, "poling", origin);
    s.poling.order = int_at(*pol, "order", s.poling.order, "poling", origin);
  }

  if (const json* det = section(root, "detector", origin)) {
    check_keys(*det, "detector",
               {"efficiency_1", "efficiency_2", "dark_hz", "window_ps"},
               origin);
    s.detector.efficiency_1 = number_at(
        *det, "efficiency_1", s.detector.efficiency_1, "detector", origin);
    s.detector.efficiency_2 = number_at(
        *det, "efficiency_2", s.detector.efficiency_2, "detector", origin);
    s.detector.dark_hz =
        number_at(*det, "dark_hz", s.detector.dark_hz, "detector", origin);
    s.detector.window_ps =
        number_at(*det, "window_ps", s.detector.window_ps, "detector", origin);
  }

  if (const json* ch = section(root, "channels", origin)) {
    check_keys(*ch, "channels",
               {"count", "spacing_nm", "width_nm", "insertion_loss_db",
                "extinction_db", "accidental_floor"},
               origin);
    s.channels.count = int_at(*ch, "count", s.channels.count, "channels",
                              origin);
    s.channels.spacing_nm = number_at(*ch, "spacing_nm", s.channels.spacing_nm,
                                      "channels", origin);
    s.channels.width_nm =
        number_at(*ch, "width_nm", s.channels.width_nm, "channels", origin);
    s.channels.insertion_loss_db =
        number_at(*ch, "insertion_loss_db", s.channels.insertion_loss_db,
                  "channels", origin);
    s.channels.extinction_db = number_at(
        *ch, "extinction_db", s.channels.extinction_db, "channels", origin);
    s.channels.accidental_floor =
        number_at(*ch, "accidental_floor", s.channels.accidental_floor,
                  "channels", origin);
  }

  if (const json* fr = section(root, "franson", origin)) {
    check_keys(*fr, "franson",
               {"arm_imbalance_ns", "window_ps", "pump_coherence_us",
                "intrinsic_visibility", "base_rate_hz", "accidental_hz",
                "phase_points", "duration_per_point_s"},
               origin);
    s.franson.arm_imbalance_ns =
        number_at(*fr, "arm_imbalance_ns", s.franson.arm_imbalance_ns,
                  "franson", origin);
    s.franson.window_ps =
        number_at(*fr, "window_ps", s.franson.window_ps, "franson", origin);
    s.franson.pump_coherence_us =
        number_at(*fr, "pump_coherence_us", s.franson.pump_coherence_us,
                  "franson", origin);
    s.franson.visibility =
        number_at(*fr, "intrinsic_visibility", s.franson.visibility, "franson",
                  origin);
    s.franson.base_rate_hz = number_at(*fr, "base_rate_hz",
                                       s.franson.base_rate_hz, "franson",
                                       origin);
    s.franson.accidental_hz = number_at(*fr, "accidental_hz",
                                        s.franson.accidental_hz, "franson",
                                        origin);
    s.franson_phase_points =
        int_at(*fr, "phase_points", s.franson_phase_points, "franson", origin);
    s.franson_duration_per_point_s =
        number_at(*fr, "duration_per_point_s", s.franson_duration_per_point_s,
                  "franson", origin);
  }

  // Derived quantities follow the (possibly overridden) inputs.
  s.franson.single_photon_coherence_ps =
      franson::coherence_time_from_bandwidth(
          s.channels.width_nm, s.source.degenerate_wavelength_nm());

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail_at(origin, e.what());
  }
  return s;
}

Scenario load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("scenario: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

std::string to_json(const Scenario& s) {
  json j;
  j["schema_version"] = 1;
  j["seed"] = s.seed;
  j["output_dir"] = s.output_dir;
  j["source"] = {
      {"pump_wavelength_nm", s.source.lambda_pump_nm},
      {"pump_power_mw", s.source.pump_power_mw},
      {"d33_pm_per_v", s.source.d33_pm_per_v},
      {"overlap_alpha_sq", s.source.overlap_alpha_sq},
      {"mode_area_um2", s.source.mode_area_um2},
      {"length_mm", s.source.length_mm},
      {"gvd0_fs2_per_mm", s.source.gvd0_fs2_per_mm},
  };
  if (s.source.n_degenerate) j["source"]["n_degenerate"] = *s.source.n_degenerate;
  else j["source"]["n_degenerate"] = nullptr;
  if (s.source.n_pump) j["source"]["n_pump"] = *s.source.n_pump;
  else j["source"]["n_pump"] = nullptr;
  j["poling"] = {{"period_um", s.poling.period_um},
                 {"duty_cycle", s.poling.duty_cycle},
                 {"length_mm", s.poling.length_mm},
                 {"order", s.poling.order}};
  j["detector"] = {{"efficiency_1", s.detector.efficiency_1},
                   {"efficiency_2", s.detector.efficiency_2},
                   {"dark_hz", s.detector.dark_hz},
                   {"window_ps", s.detector.window_ps}};
  j["channels"] = {{"count", s.channels.count},
                   {"spacing_nm", s.channels.spacing_nm},
                   {"width_nm", s.channels.width_nm},
                   {"insertion_loss_db", s.channels.insertion_loss_db},
                   {"extinction_db", s.channels.extinction_db},
                   {"accidental_floor", s.channels.accidental_floor}};
  j["franson"] = {{"arm_imbalance_ns", s.franson.arm_imbalance_ns},
                  {"window_ps", s.franson.window_ps},
                  {"pump_coherence_us", s.franson.pump_coherence_us},
                  {"intrinsic_visibility", s.franson.visibility},
                  {"base_rate_hz", s.franson.base_rate_hz},
                  {"accidental_hz", s.franson.accidental_hz},
                  {"phase_points", s.franson_phase_points},
                  {"duration_per_point_s", s.franson_duration_per_point_s}};
  return j.dump(2) + "\n";
}

}  // namespace scenario
}  // namespace spdc
