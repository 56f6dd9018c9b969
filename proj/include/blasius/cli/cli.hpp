#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace blasius::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_numerical = 1;
inline constexpr int exit_usage = 2;

/// Runs one invocation. `args` excludes the program name. Data goes to `out`
/// (or the --output file), diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace blasius::cli
