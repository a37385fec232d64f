#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "table.hpp"

namespace uatk::cli {

struct RunOutput {
    // File name (relative to the output directory) and contents.
    std::vector<std::pair<std::string, std::string>> files;
    // The command's main table; sweeps stack these.
    Table table;
    // 0, or 4 when an inequality check reported a violation.
    int status = 0;
};

inline const std::vector<std::string> kCommands{"construct", "greedy", "rbf", "jackson", "sweep", "check"};

// Validates the whole config for `command` (throwing ConfigError on any
// problem, including unknown fields) and then runs it. The config's own
// "command" field, if present, must agree.
RunOutput run_command(const std::string& command, const nlohmann::json& config);

} // namespace uatk::cli
