#pragma once
#include <stdexcept>
#include <string>

#include "hem3d/json_io.hpp"

namespace hem3d {

// Exit-code-carrying failure: 1 usage/config, 2 runtime, 3 PT-infeasible.
struct CommandError : std::runtime_error {
  int exit_code;
  CommandError(int code, const std::string& what)
      : std::runtime_error(what), exit_code(code) {}
};

// Fill defaults; throws CommandError(1) on invalid configuration.
ordered_json normalize_config(ordered_json config);

void cmd_generate(const ordered_json& config);
void cmd_optimize(const ordered_json& config);
ordered_json cmd_evaluate(const ordered_json& config);
// Returns {design_id, objectives, feasible}; callers map feasible=false to
// exit code 3. Writes <out>/selected.json.
ordered_json cmd_select(const ordered_json& config);
void cmd_plot(const ordered_json& config);

}  // namespace hem3d
