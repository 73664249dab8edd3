#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace horocp {

using Config = std::map<std::string, std::string>;

struct OptionInfo {
  std::string key;
  std::string fallback;  // default value as text; empty means unset
  std::string help;
};

struct CommandInfo {
  std::string name;
  std::string help;
  std::vector<OptionInfo> options;
};

const std::vector<CommandInfo>& command_table();

// Exit status convention shared by the CLI and the C API.
enum ExitStatus { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct CommandOutcome {
  nlohmann::json document;  // {"command", "inputs", "result", "diagnostics"}
  int exit_code = kExitOk;
};

// Unknown keys are a usage error. Library errors are caught and reported in
// diagnostics with exit code 2.
CommandOutcome run_command(const std::string& name, const Config& config);

// Parses UTF-8 key=value lines; '#' starts a comment.
Config parse_config_text(const std::string& text);

}  // namespace horocp
