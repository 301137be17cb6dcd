#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace hardy {

struct RunConfig {
  std::string command;  // bounds | oracle | sandwich | fit | constants
  std::string symbol = "lens:theta=0.5";
  double p = 2.0;
  std::size_t n_min = 1;
  std::size_t n_max = 25;
  std::size_t truncation = 1024;
  std::string output_path;  // empty: write to `out`
  std::string format = "csv";
  std::map<std::string, std::string> overrides;
  std::uint64_t seed = 0;
  /// Boundary samples for the Carleson-window estimate.
  std::size_t samples = 1 << 14;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitFailure = 3;

/// Parses "key=value" into `overrides`; ConfigError on malformed input.
void add_override(RunConfig& config, const std::string& assignment);

/// Throws ConfigError when the configuration is inconsistent.
void validate(const RunConfig& config);

/// Runs one command. Exit codes: 0 success, 1 configuration error,
/// 2 violated rigorous bound (sandwich), 3 numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hardy
