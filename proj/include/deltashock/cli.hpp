// Command-line front end. run_cli is the whole program minus argv plumbing,
// so tests can drive it with captured streams.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deltashock {

inline constexpr const char* kVersion = "0.1.0";

// args excludes the program name. Returns the process exit code:
// 0 success, 1 usage/config/runtime error, 2 run aborted on non-finite data.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deltashock
