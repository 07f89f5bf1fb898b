#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edgelaw::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumerical = 1;
inline constexpr int kUsage = 2;

// "lo:hi:step" (inclusive), "v1,v2,..." or a single number.
std::vector<double> parse_grid(const std::string& spec);

// Runs the command line; CSV goes to out (or --output), messages to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgelaw::cli
