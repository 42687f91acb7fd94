#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace partwin::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Runs one command line (args[0] is the program name) and returns the exit
/// code: 0 success, 2 argument error, 3 verify mismatch, 4 numeric guard,
/// 5 resource guardrail.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1,2,5..8" into {1,2,5,6,7,8}. Throws InvalidArgument.
std::set<std::uint64_t> parse_list(std::string_view text);

} // namespace partwin::cli
