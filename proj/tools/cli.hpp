#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homoclinic::cli {

enum ExitCode : int {
    kOk = 0,
    kAssertionFailed = 1,
    kInvalidInput = 2,
};

/// Runs one subcommand. `args` excludes the program name. The JSON payload
/// goes to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace homoclinic::cli
