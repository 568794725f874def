#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sublin {

// Exit codes of the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitChecksFailed = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitModel = 4,
    kExitExpression = 5,
    kExitComputation = 6,
};

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sublin
