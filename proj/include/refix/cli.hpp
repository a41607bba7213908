#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace refix {

/// Exit codes: 0 yes or success, 1 no, 2 usage or format error, 3 oracle or verification mismatch.
enum ExitCode { exit_yes = 0, exit_no = 1, exit_usage = 2, exit_mismatch = 3 };

/// Runs one command line; args excludes the program name. Reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refix
