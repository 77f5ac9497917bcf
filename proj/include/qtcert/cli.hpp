#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtcert {

/// Environment variable read for the default Monte Carlo seed.
inline constexpr const char* kSeedEnvVar = "QTCERT_SEED";

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;

/// Runs the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtcert
