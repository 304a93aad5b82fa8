// The `forge` command: subcommand dispatch over every module.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

struct CommandInfo {
  std::string path;                    // e.g. "prop check"
  std::string synopsis;
  std::vector<std::string> operations; // library operations the command reaches
};

const std::vector<CommandInfo>& command_table();

// argv[0] is the program name. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace forge::cli
