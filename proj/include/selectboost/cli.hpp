#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selectboost {

/// Entry point of the `selectboost` tool. `args` excludes the program name.
/// Returns the process exit status: 0 only when every requested output was
/// written.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1,0.95,0.9" or "start:stop:step" (e.g. "1:0.7:0.05").
std::vector<double> parse_c0_grid(const std::string& text);

}  // namespace selectboost
