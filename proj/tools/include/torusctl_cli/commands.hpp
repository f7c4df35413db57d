#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusctl/io/config.hpp"
#include "torusctl/saturation/mode_set.hpp"

namespace torusctl::cli {

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kConfigError = 2 };

// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::vector<double>> deltas;
  bool fixed_time = false;
  // Hidden test hook: negate the cos-cos closed form in the identity suite.
  bool flip_cos_cos_sign = false;
};

// Loads `path` (defaults only when empty) and applies the overrides.
ExperimentConfig resolve_config(const std::string& path, const Overrides& ov);

// "# key = value" lines: artifact, version, command, then every resolved
// config value and the extras.
std::string csv_preamble(const std::string& command, const ExperimentConfig& cfg,
                         const std::vector<std::pair<std::string, std::string>>& extra = {});

// "axes" or a mode-set file; a non-symmetric file is completed with a warning.
ModeSet load_modes(const ExperimentConfig& cfg, std::ostream& log);

int cmd_identities(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log);
int cmd_saturate(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log);
int cmd_simulate(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log);
int cmd_steer(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log);

// Full command line handling; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torusctl::cli
