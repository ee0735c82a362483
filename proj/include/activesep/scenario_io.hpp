#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "activesep/world.hpp"

namespace activesep {

/// Parses a scenario document. Angles are radians, or strings with an
/// explicit unit ("22.3 deg", "0.39 rad"). Grids are either explicit arrays
/// or {"from", "to", "step"} lattices. Throws ValidationError.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Canonical form: every field explicit, grids expanded, angles in radians.
nlohmann::json scenario_to_json(const Scenario& sc);

/// Sets a dotted key ("noise.keep_prob=0.9", "horizon=40") in `doc`. The value
/// is read as JSON when it parses, otherwise as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

/// Reads, overrides, parses and validates a scenario file.
Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides = {});

/// 16 hex digits of FNV-1a over the canonical JSON dump.
std::string scenario_hash(const Scenario& sc);

/// CSV with header x,z,label. Blank lines and lines starting with '#' are skipped.
std::vector<LabeledPoint> load_dataset_csv(const std::filesystem::path& path);

}  // namespace activesep
