#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "iastab/system_config.hpp"

namespace iastab {

struct RunResult {
    int exit_code = 0;
    std::vector<std::filesystem::path> outputs;
};

// Parse a JSON experiment config (strict schema: unknown keys are rejected),
// apply key=value overrides, run the experiment and emit its files plus
// manifest.json under out_dir. Throws ConfigError / NumericError / GuardError.
std::vector<std::filesystem::path> run_experiment(const std::string& config_path,
                                                  const std::vector<std::string>& overrides,
                                                  std::uint64_t seed,
                                                  const std::filesystem::path& out_dir,
                                                  const std::string& format_override = "");

// Full CLI entry point: parses argv, maps exceptions to exit codes
// (2 config/schema, 3 numeric, 4 guard).
int cli_main(const std::vector<std::string>& args);

// Exposed for tests.
SystemConfig system_config_from_json(const nlohmann::json& j);

} // namespace iastab
