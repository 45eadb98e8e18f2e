#pragma once

#include <iosfwd>

namespace globent::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;    // bad flags or malformed input file
inline constexpr int kCheckFailed = 2;   // verification failure or unmet precondition

// Runs one command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace globent::cli
