#pragma once

// Config-driven subcommands shared by the C API and the command-line tool.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "usc/config.hpp"

namespace usc::commands {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int threads = 1;
  std::optional<std::int64_t> seed;  // overrides [fit] seed
};

struct RunResult {
  bool checks_passed = false;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

std::span<const std::string_view> names();

/// Runs `command` ("sweep", "anticross", "project", "oracle", "fit",
/// "quantize"). Writes <command>.csv, <command>.summary.txt and
/// <command>.resolved.conf into out_dir.
RunResult run(std::string_view command, config::Config cfg, const RunOptions& options);
RunResult run_file(std::string_view command, const std::filesystem::path& config_path,
                   const RunOptions& options);

}  // namespace usc::commands
