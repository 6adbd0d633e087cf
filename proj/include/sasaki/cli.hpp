#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sasaki {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // computation failed or a check did not pass
inline constexpr int kExitUsage = 2;    // malformed arguments

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1,2.5,1/3" -> {1, 2.5, 0.333...}; rationals p/q are parsed as exact
// integers or decimals and divided once. Throws std::invalid_argument.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace sasaki
