#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitkit::cli {

// Exit codes shared by every subcommand.
inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;      // invalid / violation / proven nonexistence
inline constexpr int kUsageError = 2;    // bad flags, unreadable or malformed input
inline constexpr int kBudgetExceeded = 3;  // search budget hit, scan inconclusive

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitkit::cli
