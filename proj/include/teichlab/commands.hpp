#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "teichlab/json_io.hpp"

namespace teichlab {

// Command line overrides; everything else comes from the config file.
struct CommandOptions {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::string baseDir = ".";  // relative input paths are resolved against this
};

struct CommandResult {
    std::string content;
    std::string format;      // "csv" or "json"
    std::string outputPath;  // empty means standard output
    // set when the command ran but a numeric check it reports did not hold
    std::optional<std::string> failedCheck;
};

const std::vector<std::string>& commandNames();
// One-line description for help output; empty for unknown names.
std::string commandSummary(const std::string& command);

// Validates the config strictly and runs the command. Throws the library errors.
CommandResult runCommand(const std::string& command, const Json& config, const CommandOptions& opt);

// 0 success, 2 invalid input, 3 numeric assumption failure, 1 anything unexpected.
int exitCodeFor(const std::exception& e);
std::string errorTypeName(const std::exception& e);
Json errorJson(const std::exception& e, const std::string& command);

}  // namespace teichlab
