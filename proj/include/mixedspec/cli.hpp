#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "mixedspec/model.hpp"

namespace mixedspec {

enum class Command { Solve, Analyze, Classify, Verify };

struct CliOverrides {
  std::optional<std::string> out;
  std::optional<int> kmax;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

// A fully resolved run: the parsed problem plus the defaults-applied config
// document that gets echoed into every report for reproducibility.
struct RunConfig {
  Command command = Command::Solve;
  nlohmann::json resolved;
  ProblemSpec problem;
  int grid_nx = 41;
  int grid_ny = 81;
  int kmax = 50;  // scan range for analyze/classify/verify
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool quiet = false;
};

// Builds a boundary function from its config description (types: zero,
// sine, poly, bump, modes, sum). Throws ConfigError on malformed entries.
BoundaryFn boundary_from_json(const nlohmann::json& entry);

RunConfig load_run_config(Command cmd, const std::string& config_path,
                          const CliOverrides& overrides);

// Executes one resolved run, writing artifacts under out_dir. Returns the
// process exit code: 0 success, 2 unsolvable degenerate mode, 3 config
// error, 4 numerical failure.
int run(const RunConfig& cfg);

// Full command-line entry point (argument parsing + run).
int cli_main(int argc, const char* const* argv);

// Shortest round-trip decimal formatting used for all numeric output so
// repeated runs are byte-identical.
std::string format_double(double v);

}
