#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace x3sat {

/// Process exit codes of `x3sat solve`.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kSat = 10;
inline constexpr int kUnsat = 20;
inline constexpr int kBudget = 30;
inline constexpr int kDiscrepancy = 40;
}  // namespace exit_code

/// Runs the command line `args` (without the program name). Input named
/// "-" is read from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace x3sat
