#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "atomdiode/scheme.hpp"
#include "atomdiode/sweep.hpp"

namespace atomdiode {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key=value run configuration (one section per laser).
/// Velocities are cm/s and lengths um at this boundary; everything behind
/// it is SI.
struct RunConfig {
  SchemeConfig scheme;
  SweepSpec sweep;
  bool has_sweep = false;
  std::string output_path;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical emission; parse(emit(parse(x))) round-trips identically.
std::string emit_config(const RunConfig& cfg);

/// Resolve a preset name to a config: $ATOMDIODE_PRESET_DIR, ./presets,
/// then the compiled-in preset directory.
RunConfig load_preset(const std::string& name);

}  // namespace atomdiode
