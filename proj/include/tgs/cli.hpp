#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tgs::cli {

/// Exit codes: 0 on success (including findings such as an invalid
/// structure), 1 when the library reports a mathematical error, 2 on usage
/// and file errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `tgs` invocation. argv[0] is the program name. The report goes
/// to `out` as JSON (or the primary value with --quiet); hints go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgs::cli
