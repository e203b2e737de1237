#pragma once

#include <filesystem>

#include <json.hpp>

#include "ohs/config.hpp"

namespace ohs {

/// Parses and validates a config object. Missing keys take the SimConfig defaults.
/// Throws Error(InvalidInput) on unknown kinds, wrong types or invalid values.
SimConfig config_from_json(const nlohmann::json& j);

/// Fully resolved config (every default written out), suitable for a manifest.
nlohmann::json config_to_json(const SimConfig& config);

nlohmann::json kernel_to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const nlohmann::json& j);

/// Reads a config file, or the "config" member of a run manifest.
SimConfig load_config(const std::filesystem::path& path);

}  // namespace ohs
