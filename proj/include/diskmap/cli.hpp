#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diskmap {

/// Runs one subcommand. Exit codes: 0 ok or pure data, 1 a check was
/// violated, 2 usage or domain error, 3 numerical non-convergence.
int dispatch(const std::vector<std::string>& args);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diskmap
