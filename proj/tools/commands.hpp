#pragma once

#include <string>
#include <vector>

namespace iex::cli {

struct CliResult {
    int code = 0;
    std::string output;   // report stream
    std::string out_path; // empty = stdout
};

// Parses argv-style arguments and runs one subcommand. Never throws; errors
// come back as machine-readable JSON with the matching exit code (0 ok,
// 2 parse, 3 precondition, 4 budget, 5 verification failure).
CliResult run_command(const std::vector<std::string>& args);

}  // namespace iex::cli
