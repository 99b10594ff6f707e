// config.hpp — plain-text key = value configuration schema for experiments,
// with named presets and precise line diagnostics.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "silsbm/protocols.hpp"

namespace silsbm {

struct ParsedConfig {
    ExperimentConfig experiment;
    // every key resolved to its final value (defaults included), for manifests
    std::map<std::string, std::string> resolved;
    std::string preset;  // empty when none was used
};

// Parse the documented schema. Unknown keys, malformed values and range
// violations throw ConfigError naming the offending line.
ParsedConfig parse_config_text(std::string_view text, std::string_view source = "<config>");
ParsedConfig parse_config_file(const std::string& path);

std::vector<std::string> preset_names();

}  // namespace silsbm
