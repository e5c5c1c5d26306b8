#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scimap {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line. Exit codes: 0 success, 1 domain error (error name
/// and message on err), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scimap
