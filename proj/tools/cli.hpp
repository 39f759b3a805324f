#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cminer::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

inline constexpr const char* kRepoEnvVar = "COMPONENT_MINER_REPO";
inline constexpr const char* kVersion = "0.1.0";

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cminer::cli
