#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leafcoh::cli {

/// Runs one invocation; returns the exit status (0 ok, 1 usage, 2 domain).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Leaf command paths ("dio cf", "toral wang", …) paired with the library operation each one calls.
std::vector<std::pair<std::string, std::string>> dispatch_table();

} // namespace leafcoh::cli
