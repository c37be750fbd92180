#include "uavfso/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "uavfso/error.hpp"

namespace uavfso::cli {
namespace {

struct Unit {
  std::string_view name;
  double factor;  // value in unit * factor = value in base unit
};

struct Key {
  std::string_view name;
  std::vector<Unit> units;  // first entry is the base unit; empty name = dimensionless
  bool unit_required;       // more than one unit is accepted, so a bare number is ambiguous
  std::function<void(RunConfig&, double)> set;
  std::function<double(const RunConfig&)> get;
  bool integer = false;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"lambda", {{"m", 1.0}, {"nm", 1e-9}, {"um", 1e-6}}, true,
       [](RunConfig& c, double v) { c.link.wavelength = v; }, [](const RunConfig& c) { return c.link.wavelength; }},
      {"r_a", {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}}, true,
       [](RunConfig& c, double v) { c.link.aperture_radius = v; }, [](const RunConfig& c) { return c.link.aperture_radius; }},
      {"w_z", {{"m", 1.0}, {"cm", 1e-2}}, true,
       [](RunConfig& c, double v) { c.link.beam_width = v; }, [](const RunConfig& c) { return c.link.beam_width; }},
      {"Z", {{"m", 1.0}, {"km", 1e3}}, true,
       [](RunConfig& c, double v) { c.link.link_length = v; }, [](const RunConfig& c) { return c.link.link_length; }},
      {"h_l", {{"", 1.0}}, false,
       [](RunConfig& c, double v) { c.link.attenuation = v; }, [](const RunConfig& c) { return c.link.attenuation; }},
      {"sigma2_lnha", {{"", 1.0}}, false,
       [](RunConfig& c, double v) { c.link.log_irradiance_variance = v; },
       [](const RunConfig& c) { return c.link.log_irradiance_variance; }},
      {"sigma_p", {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}}, true,
       [](RunConfig& c, double v) { c.link.position_sd = v; }, [](const RunConfig& c) { return c.link.position_sd; }},
      {"sigma_theta", {{"rad", 1.0}, {"mrad", 1e-3}, {"urad", 1e-6}}, true,
       [](RunConfig& c, double v) { c.link.orientation_sd = v; }, [](const RunConfig& c) { return c.link.orientation_sd; }},
      {"theta_fov", {{"rad", 1.0}, {"mrad", 1e-3}}, true,
       [](RunConfig& c, double v) { c.link.fov_angle = v; }, [](const RunConfig& c) { return c.link.fov_angle; }},
      {"M", {{"", 1.0}}, false,
       [](RunConfig& c, double v) { c.link.series_order = static_cast<int>(v); },
       [](const RunConfig& c) { return static_cast<double>(c.link.series_order); }, true},
      {"R", {{"A/W", 1.0}}, false,
       [](RunConfig& c, double v) { c.noise.responsivity = v; }, [](const RunConfig& c) { return c.noise.responsivity; }},
      {"B_e", {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}, true,
       [](RunConfig& c, double v) { c.noise.pd_bandwidth = v; }, [](const RunConfig& c) { return c.noise.pd_bandwidth; }},
      {"B_o", {{"um", 1.0}, {"nm", 1e-3}}, true,
       [](RunConfig& c, double v) { c.noise.optical_bandwidth_um = v; },
       [](const RunConfig& c) { return c.noise.optical_bandwidth_um; }},
      {"N_b", {{"W/cm2/um/sr", 1.0}}, false,
       [](RunConfig& c, double v) { c.noise.spectral_radiance = v; },
       [](const RunConfig& c) { return c.noise.spectral_radiance; }},
      {"P_t", {{"W", 1.0}, {"mW", 1e-3}, {"dBm", 0.0}}, true,
       [](RunConfig& c, double v) {
         c.noise.transmit_power = v;
         c.transmit_power_set = true;
       },
       [](const RunConfig& c) { return c.noise.transmit_power; }},
  };
  return k;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void assign(RunConfig& c, std::string_view key, std::string_view value) {
  const Key* def = nullptr;
  for (const auto& k : keys()) {
    if (k.name == key) def = &k;
  }
  const std::string name(key);
  if (!def) throw ConfigError("unknown key '" + name + "'");
  value = trim(value);
  double number = 0.0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec != std::errc() || !std::isfinite(number)) {
    throw ConfigError("key '" + name + "': cannot read a number from '" + std::string(value) + "'");
  }
  const std::string_view unit = trim(value.substr(static_cast<std::size_t>(end - value.data())));
  const Unit* u = nullptr;
  if (unit.empty()) {
    if (def->unit_required) throw ConfigError("key '" + name + "': value needs a unit suffix");
    u = &def->units.front();
  } else {
    for (const auto& cand : def->units) {
      if (!cand.name.empty() && cand.name == unit) u = &cand;
    }
    if (!u) throw ConfigError("key '" + name + "': unsupported unit '" + std::string(unit) + "'");
  }
  if (def->integer && number != std::floor(number)) throw ConfigError("key '" + name + "': value must be an integer");
  if (def->integer && std::abs(number) > 1e6) throw ConfigError("key '" + name + "': value out of range");
  const double base = (u->name == "dBm") ? dbm_to_watts(number) : number * u->factor;
  def->set(c, base);
}

void apply_line(RunConfig& c, std::string_view line, char separator, const std::string& where) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;
  const auto eq = line.find(separator);
  if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value unit', got '" + std::string(line) + "'");
  assign(c, trim(line.substr(0, eq)), line.substr(eq + 1));
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.noise = make_noise_model(c.link, 0.6, 1e-2);
  return c;
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  RunConfig c = default_config();
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    apply_line(c, line, '=', "line " + std::to_string(line_no));
  }
  for (const auto& o : overrides) apply_line(c, o, '=', "--set '" + o + "'");
  c.noise.lens_area_cm2 = lens_area_cm2(c.link.aperture_radius);
  try {
    validate(c.link);
    validate(c.noise, c.link);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("out of range: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  if (path.empty()) return parse_config("", overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::vector<std::string> echo_config(const RunConfig& c) {
  std::vector<std::string> out;
  for (const auto& k : keys()) {
    if (k.name == "P_t" && !c.transmit_power_set) continue;
    char buf[128];
    const Unit& u = k.units.front();
    std::snprintf(buf, sizeof(buf), "%.*s = %.17g%s%.*s", static_cast<int>(k.name.size()), k.name.data(), k.get(c),
                  u.name.empty() ? "" : " ", static_cast<int>(u.name.size()), u.name.data());
    out.emplace_back(buf);
  }
  return out;
}

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> out;
  for (const auto& k : keys()) out.push_back(k.name);
  return out;
}

}  // namespace uavfso::cli
