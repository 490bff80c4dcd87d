#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace paramsynth::cli {

// Process exit codes.
enum ExitCode : int {
    Success = 0,          // also: satisfied, AllSat, coverage reached
    Violated = 1,         // violated, AllViolate
    UsageError = 2,       // bad flags, malformed input, unmet engine preconditions
    Inconclusive = 3,     // Unknown, budget or iteration cap hit, solver failures
};

// Result of one command: ordered key/value fields plus the wall time.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> fields;
    std::chrono::milliseconds wall{0};
    int exitCode = Success;

    void add(std::string key, std::string value);
    std::string const* find(std::string const& key) const;

    // "key=value" lines; the wall time comes last as wall_ms when requested.
    std::string keyValue(bool timing = true) const;
    std::string json(bool timing = true) const;
};

// Runs the command line (without the program name). Reports go to out, diagnostics to err.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace paramsynth::cli
