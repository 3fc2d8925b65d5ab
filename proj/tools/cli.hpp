#pragma once

#include <iosfwd>

namespace absmin::cli {

/// Default configuration file when --config is absent.
inline constexpr const char* kConfigEnv = "ABSMIN_CONFIG";

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. JSON goes to `out` unless an output path is given;
/// diagnostics go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace absmin::cli
