#include <CLI11.hpp>

#include <iostream>

#include "torusctl/errors.hpp"
#include "torusctl/version.hpp"
#include "torusctl_cli/commands.hpp"

namespace torusctl::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galerkin Navier-Stokes controllability experiments on the 3-torus", "torusctl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::string sweep;
  bool fixed_time = false;
  bool flip = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "key = value experiment file");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "output directory for CSV artifacts");
  };
  CLI::App* ident = app.add_subcommand("identities", "check the bilinear form against closed forms and a grid oracle");
  add_common(ident);
  ident->add_flag("--flip-cos-cos-sign", flip)->group("");
  CLI::App* sat = app.add_subcommand("saturate", "run the saturation chain of a mode set");
  add_common(sat);
  CLI::App* sim = app.add_subcommand("simulate", "integrate the uncontrolled Galerkin system");
  add_common(sim);
  CLI::App* steer = app.add_subcommand("steer", "synthesize and verify a steering control");
  add_common(steer);
  steer->add_option("--delta-sweep", sweep, "comma separated delta values");
  steer->add_flag("--fixed-time", fixed_time, "also run the fixed-time re-steering loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  Overrides ov;
  ov.seed = seed;
  ov.out = out_dir;
  ov.fixed_time = fixed_time;
  ov.flip_cos_cos_sign = flip;

  try {
    if (!sweep.empty()) ov.deltas = parse_double_list(sweep);
    const ExperimentConfig cfg = resolve_config(config, ov);
    if (ident->parsed()) return cmd_identities(cfg, ov, out);
    if (sat->parsed()) return cmd_saturate(cfg, ov, out);
    if (sim->parsed()) return cmd_simulate(cfg, ov, out);
    return cmd_steer(cfg, ov, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NonSymmetricModeSet& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kAssertionFailure;
  }
}

}  // namespace torusctl::cli
