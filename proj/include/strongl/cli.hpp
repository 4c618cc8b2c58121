#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strongl {

// Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
// 3 budget exhausted or inconclusive.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

// `args` excludes the program name.  Writes one JSON report to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace strongl
