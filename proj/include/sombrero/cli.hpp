#pragma once

/** \file cli.hpp
 *
 *  \brief Command-line front end.  Kept in the library so the test suites can drive it
 *         without spawning processes.
 *
 *  Exit codes: 0 success, 1 bad arguments, 2 solver failure.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace sombrero::cli {

enum ExitCode : int { kOk = 0, kBadArgs = 1, kSolverFailure = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inclusive integer range parsed from "a", "a..b".  Throws std::invalid_argument.
std::vector<int> parse_m_range(const std::string& spec);

/// "lo:hi:n" (n uniform points), "default" (the 141-point hybrid grid) or a comma list.
std::vector<double> parse_r0_grid(const std::string& spec);

}  // namespace sombrero::cli
