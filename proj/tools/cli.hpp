#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumfree::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

/// Runs one command line (without the program name) and returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,2,5" or "{1,2,5}" -> {1,2,5}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace sumfree::cli
