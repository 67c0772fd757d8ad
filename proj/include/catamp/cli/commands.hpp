#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "catamp/cli/config.hpp"
#include "catamp/cli/output.hpp"

namespace catamp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitZeroHerald = 3;
inline constexpr int kExitNumeric = 4;

struct RunRequest {
  Settings settings = Settings::defaults();
  int workers = 1;
  Format format = Format::csv;
};

struct CommandResult {
  OutputSet files;
  /// Human-readable lines for stdout.
  std::vector<std::string> summary;
};

const std::vector<std::string>& command_names();

/// Dispatches on settings "command". Nothing is written to disk.
CommandResult run_command(const RunRequest& request);

/// Resolved settings, tool version, timestamp and digests of `files`.
Json make_manifest(const RunRequest& request, const Json& digests);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catamp::cli
