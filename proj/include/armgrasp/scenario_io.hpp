#pragma once

#include <string>

#include "armgrasp/harness.hpp"

namespace armgrasp {

/// Parse a scenario fixture file (line-oriented key-value sections: [arm],
/// [table], [obstacle], [object], [task]; lengths in meters, angles in
/// radians unless a key says _deg). Throws std::runtime_error with a line
/// reference on malformed input. See docs/scenario_format.md for the grammar.
ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace armgrasp
