#pragma once

// Command-line front end: bounds, exact, estimate, sweep and verify.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
// 3 work limit exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace codedensity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitWorkLimit = 3;

/// Environment variable naming the default configuration file.
inline constexpr const char* kConfigEnv = "CODEDENSITY_CONFIG";

/// Fixed CSV column order of bounds/exact/estimate/sweep records.
const std::vector<std::string>& record_columns();
/// Fixed CSV column order of verify records.
const std::vector<std::string>& verify_columns();

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace codedensity::cli
