// commands.hpp — CLI command dispatch, separated from argument parsing.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ebcache {

struct CliOptions {
    std::string command;      // analyze | optimize | simulate | sweep | fixture-fig1
    std::string config_path;  // may be empty for fixture-fig1
    std::string out_dir;      // overrides output.dir when non-empty
    std::optional<std::uint64_t> seed;
    std::string format;       // overrides output.format when non-empty
    int parallel = 1;
    int verbosity = 1;        // 0 quiet, 1 info, 2 debug
};

// Runs one command end to end; returns the process exit status. Errors inside
// a command are reported on stderr and turn into a non-zero status.
int run_command(const CliOptions& opts);

}  // namespace ebcache
