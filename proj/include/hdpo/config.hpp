#pragma once

#include <string>
#include <vector>

#include "hdpo/trainer.hpp"

namespace hdpo {

/// Reads a JSON run config with sections env / hp / update / run. Every field
/// is optional and falls back to its default.
RunConfig load_run_config(const std::string& path);

RunConfig run_config_from_json_text(const std::string& text);

/// Applies one "section.key=value" override (the --set flag).
void apply_override(RunConfig& cfg, const std::string& assignment);

std::string run_config_to_json_text(const RunConfig& cfg);

}  // namespace hdpo
