#ifndef LALG_CLI_HPP
#define LALG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lalg {

/// Exit statuses of `lalg`.
enum ExitStatus : int {
  exit_ok = 0,
  exit_falsified = 1,
  exit_malformed = 2,
  exit_resource_bound = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lalg

#endif  // LALG_CLI_HPP
