#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chlab/sphere.hpp"

namespace chlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitDegenerate = 2,
    kExitNoConvergence = 3,
    kExitIo = 4,
};

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" where each real part may be a
/// decimal or a rational "p/q". Throws std::invalid_argument otherwise.
Complex parse_complex(std::string_view text);

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
/// Throws std::invalid_argument on a malformed line.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Entry point of the tool; `out` receives results, `err` the resolved
/// configuration and diagnostics.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chlab
