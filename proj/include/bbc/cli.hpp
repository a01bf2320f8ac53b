#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace bbc::cli {

inline constexpr std::string_view kToolName = "bbc";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { ok = 0, usage = 1, claim_violation = 2, numeric_failure = 3 };

// Entry point shared by the executable and the tests. Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Shortest form with at most 9 significant digits, locale independent.
std::string format_number(double value);

}  // namespace bbc::cli
