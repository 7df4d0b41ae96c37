#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phishift::cli {

inline constexpr const char* kVersion = "0.1.0";

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitBudget = 4;

struct Environment {
  unsigned jobs = 1;
};

/// Reads PHISHIFT_JOBS (falling back to the hardware thread count).
Environment environment_from_process();

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, const Environment& env, std::ostream& out,
        std::ostream& err);

}  // namespace phishift::cli
