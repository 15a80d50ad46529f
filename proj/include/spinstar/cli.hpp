#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinstar::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsageError = 2;
inline constexpr int kExitIoError = 3;

// Runs the command line given the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinstar::cli
