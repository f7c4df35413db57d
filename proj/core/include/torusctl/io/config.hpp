#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torusctl/galerkin/integrator.hpp"

namespace torusctl {

// "key = value" lines; '#' starts a comment; blank lines are ignored.
// Throws ConfigError (with the line number) on malformed lines and on
// repeated keys.
std::map<std::string, std::string> parse_key_values(std::istream& is);

// Every knob of the command-line experiments, with defaults. Paths are kept
// as written; relative ones are resolved against `base_dir`.
struct ExperimentConfig {
  std::string base_dir = ".";

  // Mode set: "axes" for {+-e1, +-e2, +-e3} or a path to a mode-set file.
  std::string modes = "axes";
  int M = 2;
  double nu = 0.1;
  double T = 1.0;
  int k = 3;
  double dt_max = 0.01;
  double cfl = 0.25;
  std::uint64_t seed = 1;
  std::string out = "out";

  // saturate
  int max_level = 8;
  int patience = 2;

  // identities
  int exact_box = 2;    // all pairs with |l|_inf <= exact_box in rational mode
  int oracle_pairs = 100;
  int oracle_box = 4;

  // simulate
  double radius = 0.1;  // H^k radius of random states
  int snapshots = 11;

  // steer
  std::string family = "square";  // or "constant"
  double amplitude = 100.0;
  int segments = 16;
  double lambda = 1e-8;
  double cond_limit = 1e12;
  int max_refinements = 3;
  double stall = 0.1;
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  // Seeded (u0, u1) pairs swept with the same response matrix; the first
  // one also drives the snapshots and the fixed-time run.
  int instances = 1;
  double fixed_T = 1.0;
  double fixed_epsilon = 0.1;  // fraction of ||u1 - u0||_k
  double fixed_delta = 0.025;
  double r_fraction = 0.5;
  double trigger_fraction = 0.9;
  int resteer_budget = 3;

  // Unknown keys and unparsable values throw ConfigError.
  static ExperimentConfig from_key_values(const std::map<std::string, std::string>& kv);
  static ExperimentConfig load(const std::string& path);

  void validate() const;
  SimConfig sim() const;
  std::string resolve(const std::string& path) const;

  // Every key with its resolved value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

std::vector<double> parse_double_list(const std::string& s);

}  // namespace torusctl
