#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionkz::cli {

enum ExitCode : int {
    success = 0,
    verification_failure = 1,
    usage_error = 2,
    precision_exhausted = 3,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fusionkz::cli
