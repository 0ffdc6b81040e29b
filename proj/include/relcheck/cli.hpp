#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relcheck {

// Exit codes of the command line tool.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input = 2;

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relcheck
