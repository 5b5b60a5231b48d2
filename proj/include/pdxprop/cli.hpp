#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdxprop::cli {

// Exit codes: 0 success, 1 tolerance violation, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation of the batch tool. args excludes the program name,
// e.g. {"count", "--n", "0", "--n", "1"}. Tables and reports go to `out`
// (or to --out files, each with a manifest alongside); diagnostics go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdxprop::cli
