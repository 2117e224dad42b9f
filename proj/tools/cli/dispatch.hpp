#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sflab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand.  `args` excludes the program name.  Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sflab::cli
