#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ordercone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command. `args` excludes the program name.
/// Returns 0 on success, 1 when a check fails, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordercone::cli
