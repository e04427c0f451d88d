#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vacfree::cli {

// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Data goes to `out` (or the
// --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vacfree::cli
