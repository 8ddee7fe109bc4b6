#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ayah::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args[0]` is the program name. Returns the process
/// exit status: 0 success, 1 data error, 2 usage error.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace ayah::cli
