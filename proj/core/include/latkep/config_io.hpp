#pragma once

#include <string>

#include "latkep/scenario.hpp"

namespace latkep {

// INI-style scenario text: [section] headers over key = value lines,
// '#'/';' comments, 2/3-vectors as comma lists. A `preset` key under
// [scenario] loads the named preset first; later keys override it.
// Unknown keys and malformed lines raise ValidationError with the line
// number. The result is fully validated.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// Canonical text for a resolved config; parse_config(print_config(cfg))
// reproduces cfg exactly (doubles at 17 significant digits).
std::string print_config(const ScenarioConfig& cfg);

}  // namespace latkep
