#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperratio {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitPrecision = 3;

// Runs one CLI invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperratio
