#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlconn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;

/// Runs one `mlconn` invocation. args[0] is the program name. The primary
/// artifact (CSV or the JSON run report, per --format) goes to `out`; with
/// --out <dir> every artifact is also written there. Errors are reported on
/// `err` as a JSON object and select exit code 2 (bad input) or 3 (solver).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlconn::cli
