#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavfso/channel.hpp"
#include "uavfso/noise.hpp"

namespace uavfso::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved inputs of one run. P_t has no default: the link budget
/// tables sweep it, so commands that need it check transmit_power_set.
struct RunConfig {
  LinkParameters link;
  NoiseModel noise;
  bool transmit_power_set = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Defaults of every field, P_t unset.
RunConfig default_config();

/// Applies `key = value unit` lines (text) and then `key=value unit`
/// overrides on top of the defaults, and validates the result. Blank lines and
/// `#` comments are ignored. Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// parse_config on the contents of path; an empty path means defaults only.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// `key = value unit` lines that parse back to the same RunConfig. Values are
/// written in the base unit of each key with 17 significant digits.
std::vector<std::string> echo_config(const RunConfig& c);

/// Keys accepted in config files, in echo order.
std::vector<std::string_view> config_keys();

}  // namespace uavfso::cli
