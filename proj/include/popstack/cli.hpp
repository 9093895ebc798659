#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace popstack::cli {

/// Process exit statuses.
enum ExitCode : int {
    kSuccess = 0,
    kNegative = 1,      // not sortable, 2-contains, mismatches found
    kInputError = 2,    // usage, parse or file errors
    kBudgetRefused = 3, // enumeration beyond POPSTACK_MAX_ENUM_LEN
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace popstack::cli
