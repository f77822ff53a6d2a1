#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace spoja::app {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_violation = 3, exit_runtime = 4 };

enum class Format { csv, json };

struct Options {
  std::string config_text;           // JSON configuration document
  std::string out_dir = ".";
  std::size_t threads = 1;           // 0 = hardware concurrency
  std::optional<std::uint64_t> seed; // overrides the config seed
  Format format = Format::csv;
};

// Runs compare, concentration, verify-bounds or boost-demo. Output files go to
// options.out_dir; a one-line status and the resolved configuration go to log.
// Returns one of the ExitCode values; never throws.
int run_command(std::string_view command, const Options& options, std::ostream& log);

// Reads a whole file; throws spoja::Error(config_error) if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace spoja::app
