#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anticrit::cli {

// Exit codes: 0 success, 2 invalid invocation or input, 3 numerical guard
// (critical point, truncation, degeneracy, gap, step, convergence).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anticrit::cli
