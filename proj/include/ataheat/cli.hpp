#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace ataheat::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct Options {
  std::string verb;  ///< spectrum | step | evolve | cluster | resources
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
  std::optional<bool> oracle;         ///< overrides oracle tracking
};

/// Runs one experiment command. Returns 0 when every requested output was
/// written, 1 on configuration errors, 2 on runtime failures.
int run_command(const Options& options);

}  // namespace ataheat::cli
