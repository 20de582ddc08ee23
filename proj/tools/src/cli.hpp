#ifndef LATVAL_TOOLS_CLI_HPP
#define LATVAL_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace latval::cli
{

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_violated = 2,
    exit_malformed = 3,
};

inline constexpr int default_order = 12;

// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace latval::cli

#endif
