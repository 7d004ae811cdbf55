#pragma once

#include "cable/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cable {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitModel = 2, kExitAllFailed = 3 };

struct CommandOptions {
    std::optional<std::string> out_dir;  // overrides run.out_dir
    std::optional<std::uint64_t> seed;   // overrides pso.seed
    std::optional<int> repetitions;      // overrides run.repetitions
    bool quiet = false;
};

// Applies command-line overrides to a parsed config.
RunConfig apply_overrides(RunConfig config, const CommandOptions& options);

void cmd_solve(const RunConfig& config, std::ostream& log);
void cmd_static(const RunConfig& config, std::ostream& log);
void cmd_reference(const RunConfig& config, std::ostream& log);
void cmd_identify(const RunConfig& config, std::ostream& log);
void cmd_sweep(const RunConfig& config, std::ostream& log);
void cmd_freq_count_study(const RunConfig& config, std::ostream& log);

// Parses the config, dispatches, and maps failures onto exit codes. Messages
// go to `err`; progress goes to `out` unless quiet.
int run_command(const std::string& name, const std::string& config_path, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace cable
