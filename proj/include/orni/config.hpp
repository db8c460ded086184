#pragma once

// Run configuration files: INI-style sections and `key = value` pairs, `#` or
// `;` comments, degrees and SI units as the key suffix says. Missing keys keep
// the built-in defaults; unknown sections or keys, duplicates and bad values
// raise ConfigError with `file:line:` prefixes.

#include <string>
#include <string_view>

#include "orni/sim.hpp"

namespace orni::config {

struct RunConfig {
  sim::VehicleConfig vehicle;
  sim::SimSettings settings;
  /// 16 hex digits of FNV-1a over the source text.
  std::string hash;
};

RunConfig parse_config(std::string_view text, std::string_view source_name = "<config>");
RunConfig load_config(const std::string& path);

std::string fnv1a_hex(std::string_view text);

}  // namespace orni::config
