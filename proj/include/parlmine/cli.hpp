#pragma once

#include <ostream>
#include <span>
#include <string>

namespace parlmine::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// argv[0] is the program name. Results without an output file go to `out`,
// diagnostics to `err`.
int run(std::span<const std::string> argv, std::ostream& out, std::ostream& err);

}  // namespace parlmine::cli
