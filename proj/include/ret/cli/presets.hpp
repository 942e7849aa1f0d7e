#pragma once

// Figure-reproduction parameter bundles, stored as config text.

#include <string>
#include <string_view>
#include <vector>

namespace ret::cli {

struct Preset {
  std::string_view name;
  std::string_view kind;  ///< "sweep" or "dynamics"
  std::string_view text;  ///< config body, parseable by Config::parse
};

const std::vector<Preset>& presets();

/// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace ret::cli
