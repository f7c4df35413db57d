#include "torusctl_cli/commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "torusctl/control/steering.hpp"
#include "torusctl/errors.hpp"
#include "torusctl/fourier/field_io.hpp"
#include "torusctl/fourier/random_field.hpp"
#include "torusctl/saturation/saturation.hpp"
#include "torusctl/version.hpp"
#include "torusctl_cli/identity_suite.hpp"

namespace torusctl::cli {

namespace {

std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::filesystem::path out_dir(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << content;
}

std::pair<DenseField, DenseField> draw_endpoints(const GalerkinSpace& sp, const ExperimentConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  DenseField u0 = sp.from_field(random_field(cfg.M, cfg.k, cfg.radius, rng));
  DenseField u1 = sp.from_field(random_field(cfg.M, cfg.k, cfg.radius, rng));
  return {std::move(u0), std::move(u1)};
}

}  // namespace

ExperimentConfig resolve_config(const std::string& path, const Overrides& ov) {
  ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : ExperimentConfig::load(path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.out) cfg.out = *ov.out;
  if (ov.deltas) cfg.deltas = *ov.deltas;
  cfg.validate();
  return cfg;
}

std::string csv_preamble(const std::string& command, const ExperimentConfig& cfg,
                         const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ostringstream os;
  os << "# artifact = " << kArtifactName << "\n";
  os << "# version = " << kVersion << "\n";
  os << "# command = " << command << "\n";
  for (const auto& [k, v] : cfg.resolved()) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : extra) os << "# " << k << " = " << v << "\n";
  return os.str();
}

ModeSet load_modes(const ExperimentConfig& cfg, std::ostream& log) {
  if (cfg.modes == "axes") return ModeSet::unit_axes();
  const std::string path = cfg.resolve(cfg.modes);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mode set file '" + path + "'");
  bool completed = false;
  ModeSet k = read_mode_set(in, &completed);
  if (completed) log << "warning: mode set '" << path << "' was not symmetric; missing negatives were added\n";
  if (k.empty()) throw ConfigError("mode set '" + path + "' is empty");
  return k;
}

int cmd_identities(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log) {
  IdentityOptions opt;
  opt.exact_box = cfg.exact_box;
  opt.oracle_pairs = cfg.oracle_pairs;
  opt.oracle_box = cfg.oracle_box;
  opt.seed = cfg.seed;
  opt.flip_cos_cos_sign = ov.flip_cos_cos_sign;
  const IdentityReport rep = run_identity_suite(opt);

  std::vector<std::pair<std::string, std::string>> extra;
  if (ov.flip_cos_cos_sign) extra.emplace_back("mutation", "flip_cos_cos_sign");
  write_file(out_dir(cfg) / "identities.csv", csv_preamble("identities", cfg, extra) + rep.to_csv());

  for (const auto& c : rep.checks) {
    log << std::left << std::setw(20) << c.name << " cases " << std::setw(7) << c.cases << " failures "
        << std::setw(5) << c.failures << " worst " << num(c.worst) << "  " << (c.pass() ? "pass" : "FAIL") << "\n";
  }
  if (rep.vacuous()) log << "warning: empty mode range, nothing was checked\n";
  log << "identities: " << (rep.pass() ? "pass" : "FAIL") << " (worst float residual "
      << num(rep.worst_float_residual()) << ")\n";
  return rep.pass() ? kPass : kAssertionFailure;
}

int cmd_saturate(const ExperimentConfig& cfg, const Overrides&, std::ostream& log) {
  const ModeSet k = load_modes(cfg, log);
  const SaturationLedger ledger = certify_saturation(k, cfg.M, cfg.max_level, cfg.patience);

  std::vector<std::pair<std::string, std::string>> extra{
      {"mode_set_size", std::to_string(k.size())},
      {"generator", ledger.generator ? "yes" : "no"},
      {"verdict", to_string(ledger.verdict)},
  };
  bool ok = true;
  if (k == ModeSet::unit_axes()) {
    // The first bracket of the axis set only reaches |l| <= 2.
    const RationalSubspace h1 = h_subspace(k, 1);
    const bool within = h1.max_norm2() <= 4;
    extra.emplace_back("h1_support_within_norm_2", within ? "confirmed" : "violated");
    extra.emplace_back("h1_max_norm2", std::to_string(h1.max_norm2()));
    extra.emplace_back("h1_max_wavenumber", std::to_string(h1.max_wavenumber()));
    log << "H_1 support within |l| <= 2: " << (within ? "confirmed" : "violated") << " (dim " << h1.rank()
        << ", max |l|^2 = " << h1.max_norm2() << ", max |l|_inf = " << h1.max_wavenumber() << ")\n";
    ok = within;
  }
  write_file(out_dir(cfg) / "saturation.csv", csv_preamble("saturate", cfg, extra) + ledger.to_csv());

  log << "mode set of size " << k.size() << ", generator: " << (ledger.generator ? "yes" : "no") << "\n";
  for (const auto& rec : ledger.levels) log << "  level " << rec.level << ": dim " << rec.dim << "\n";
  for (std::size_t i = 0; i < ledger.cutoffs.size(); ++i) {
    log << "  M = " << ledger.cutoffs[i] << ": ";
    if (ledger.first_covering_level[i]) {
      log << "covered at level " << *ledger.first_covering_level[i] << "\n";
    } else {
      log << "not covered\n";
    }
  }
  log << "verdict: " << to_string(ledger.verdict) << "\n";
  return ok ? kPass : kAssertionFailure;
}

int cmd_simulate(const ExperimentConfig& cfg, const Overrides&, std::ostream& log) {
  auto space = std::make_shared<const GalerkinSpace>(cfg.M);
  const SimConfig sim = cfg.sim();
  std::mt19937_64 rng(cfg.seed);
  const DenseField u0 = space->from_field(random_field(cfg.M, cfg.k, cfg.radius, rng));

  SolveOptions opt;
  for (int i = 1; i + 1 < cfg.snapshots; ++i) opt.sample_times.push_back(sim.T * i / (cfg.snapshots - 1));
  const Trajectory traj = solve_ns(space, u0, sim, ForcingSpec{}, opt);

  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "t,sobolev_k_norm,l2_norm,energy\n";
  const double e0 = 0.5 * space->sobolev_norm_sq(u0, 0);
  double drift = 0.0;
  std::vector<double> want{0.0};
  want.insert(want.end(), opt.sample_times.begin(), opt.sample_times.end());
  want.push_back(sim.T);
  std::size_t j = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double e = 0.5 * space->sobolev_norm_sq(traj.state(i), 0);
    drift = std::max(drift, std::abs(e - e0));
    if (j < want.size() && std::abs(traj.time(i) - want[j]) <= 1e-12 * std::max(1.0, sim.T)) {
      csv << traj.time(i) << ',' << traj.sobolev_norm(i, cfg.k) << ',' << traj.sobolev_norm(i, 0) << ',' << e << "\n";
      ++j;
    }
  }
  const auto dir = out_dir(cfg);
  write_file(dir / "simulate.csv", csv_preamble("simulate", cfg) + csv.str());
  std::ostringstream field;
  write_field(field, space->to_field(traj.final_state()));
  write_file(dir / "simulate_final.field", field.str());

  log << "simulated " << traj.size() - 1 << " steps to t = " << traj.end() << "; ||u(T)||_" << cfg.k << " = "
      << num(space->sobolev_norm(traj.final_state(), cfg.k)) << "\n";
  if (cfg.nu == 0.0) log << "Euler run: largest energy drift " << num(drift) << "\n";
  return kPass;
}

int cmd_steer(const ExperimentConfig& cfg, const Overrides& ov, std::ostream& log) {
  const ModeSet k = load_modes(cfg, log);
  auto space = std::make_shared<const GalerkinSpace>(cfg.M);
  const SimConfig sim = cfg.sim();
  const GalerkinSpace& sp = *space;

  const RationalSubspace h1 = h_subspace(k, 1);
  const Eigen::MatrixXd dirs = frame_basis(sp, h1);
  const ObservableFamily family = cfg.family == "square" ? make_observable_family(k, cfg.T)
                                                         : ObservableFamily::constant(k, cfg.T, 1.0);
  const ReferenceTrajectory ref = build_reference(space, k, family, cfg.amplitude);
  const ReferenceCertificate cert = certify_reference(ref, h1, 100, cfg.seed);
  log << "reference: " << ref.num_slots() << " slots, endpoints zero " << (cert.endpoints_zero ? "yes" : "no")
      << ", exact membership " << (cert.exact_membership ? "yes" : "no") << ", worst float residual "
      << num(std::max(cert.worst_zeta_residual, cert.worst_stokes_residual)) << "\n";

  GramianOptions gopt;
  gopt.segments = cfg.segments;
  gopt.lambda_rel = cfg.lambda;
  gopt.cond_limit = cfg.cond_limit;
  gopt.max_refinements = cfg.max_refinements;
  gopt.stall = cfg.stall;
  gopt.probe_seed = cfg.seed + 7;
  std::vector<RefinementRecord> hist;
  const GramianSolver g = refine_until_stall(space, ref, sim, dirs, gopt, &hist);
  std::string hist_s;
  for (const auto& h : hist) {
    hist_s += (hist_s.empty() ? "" : ";") + std::to_string(h.segments) + ":" + num(h.probe_residual);
    log << "  " << h.segments << " segments: probe residual " << num(h.probe_residual) << "\n";
  }
  const auto& sv = g.singular_values();
  log << "response matrix: " << g.num_atoms() << " atoms, rank " << g.rank() << " of " << sp.frame_dim()
      << ", sigma_min/sigma_max " << num(sv[sv.size() - 1] / sv[0]) << "\n";

  const auto [u0, u1] = draw_endpoints(sp, cfg);
  const ConvergenceReport rep = steer_small_time(u0, u1, cfg.deltas, g, ref, sim);

  std::vector<std::pair<std::string, std::string>> extra{
      {"h1_dim", std::to_string(h1.rank())},
      {"response_rank", std::to_string(g.rank())},
      {"frame_dim", std::to_string(sp.frame_dim())},
      {"segments_used", std::to_string(g.segments())},
      {"refinement", hist_s},
      {"reference_residual", num(std::max(cert.worst_zeta_residual, cert.worst_stokes_residual))},
      {"u0_norm_k", num(sp.sobolev_norm(u0, cfg.k))},
      {"u1_norm_k", num(sp.sobolev_norm(u1, cfg.k))},
      {"free_flow_gap", num(rep.free_flow_gap)},
      {"verdict", rep.verdict()},
  };
  const auto dir = out_dir(cfg);
  write_file(dir / "convergence.csv", csv_preamble("steer", cfg, extra) + rep.to_csv());

  bool all_monotone = !rep.has_verdict || rep.monotone;
  if (cfg.instances > 1 && !cfg.deltas.empty()) {
    std::mt19937_64 rng(cfg.seed);
    std::ostringstream csv;
    csv << std::setprecision(12) << "instance,u0_norm_k,u1_norm_k,free_flow_gap,final_error_k,verdict\n";
    double worst = 0.0;
    for (int i = 0; i < cfg.instances; ++i) {
      const DenseField a = sp.from_field(random_field(cfg.M, cfg.k, cfg.radius, rng));
      const DenseField b = sp.from_field(random_field(cfg.M, cfg.k, cfg.radius, rng));
      const ConvergenceReport r = i == 0 ? rep : steer_small_time(a, b, cfg.deltas, g, ref, sim);
      all_monotone = all_monotone && (!r.has_verdict || r.monotone);
      worst = std::max(worst, r.rows.back().endpoint_error);
      csv << i << ',' << sp.sobolev_norm(a, cfg.k) << ',' << sp.sobolev_norm(b, cfg.k) << ',' << r.free_flow_gap
          << ',' << r.rows.back().endpoint_error << ',' << r.verdict() << "\n";
    }
    write_file(dir / "instances.csv", csv_preamble("steer", cfg, {{"max_final_error_k", num(worst)}}) + csv.str());
    log << "largest final error over " << cfg.instances << " instances: " << num(worst) << "\n";
  }
  log << rep.to_csv();
  log << "verdict: " << rep.verdict() << "\n";

  if (!cfg.deltas.empty()) {
    // Snapshots of the run with the smallest delta in the sweep.
    const double delta = cfg.deltas.back();
    const SteeringPlan plan = synthesize(u0, u1, delta, g, ref, sim);
    ForcingSpec f;
    f.eta = plan.eta();
    SolveOptions so;
    so.t1 = plan.duration();
    for (int i = 1; i + 1 < cfg.snapshots; ++i) so.sample_times.push_back(plan.duration() * i / (cfg.snapshots - 1));
    const Trajectory traj = solve_ns(space, u0, sim, f, so);
    std::ostringstream csv;
    csv << std::setprecision(12) << "t,sobolev_k_norm,error_k\n";
    std::size_t j = 0;
    std::vector<double> want{0.0};
    want.insert(want.end(), so.sample_times.begin(), so.sample_times.end());
    want.push_back(plan.duration());
    for (std::size_t i = 0; i < traj.size() && j < want.size(); ++i) {
      if (std::abs(traj.time(i) - want[j]) > 1e-12) continue;
      csv << traj.time(i) << ',' << traj.sobolev_norm(i, cfg.k) << ','
          << sp.sobolev_norm(traj.state(i) - u1, cfg.k) << "\n";
      ++j;
    }
    write_file(dir / "steer_trajectory.csv", csv_preamble("steer", cfg, {{"delta", num(delta)}}) + csv.str());
    std::ostringstream plan_s;
    write_plan(plan_s, plan, g);
    write_file(dir / "plan.txt", plan_s.str());
  }

  bool ok = all_monotone;
  if (ov.fixed_time) {
    FixedTimeOptions fo;
    fo.epsilon = cfg.fixed_epsilon * sp.sobolev_norm(u1 - u0, cfg.k);
    fo.delta = cfg.fixed_delta;
    fo.r_fraction = cfg.r_fraction;
    fo.trigger_fraction = cfg.trigger_fraction;
    fo.resteer_budget = cfg.resteer_budget;
    const FixedTimeResult res = steer_fixed_time(u0, u1, cfg.fixed_T, g, ref, sim, fo);
    std::vector<std::pair<std::string, std::string>> fx{
        {"u1_minus_u0_norm_k", num(sp.sobolev_norm(u1 - u0, cfg.k))},
        {"epsilon", num(res.epsilon)},
        {"final_error_k", num(res.final_error)},
        {"total_time", num(res.total_time)},
        {"horizon", num(cfg.fixed_T)},
        {"success", res.success ? "yes" : "no"},
    };
    write_file(dir / "fixed_time.csv", csv_preamble("steer --fixed-time", cfg, fx) + res.phases_csv());
    std::ostringstream norms;
    norms << std::setprecision(12) << "t,error_k\n";
    const auto& tr = res.trajectory;
    const std::size_t stride = std::max<std::size_t>(1, tr.size() / 200);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      if (i % stride == 0 || i + 1 == tr.size())
        norms << tr.time(i) << ',' << sp.sobolev_norm(tr.state(i) - u1, cfg.k) << "\n";
    }
    write_file(dir / "fixed_time_trajectory.csv", csv_preamble("steer --fixed-time", cfg, fx) + norms.str());
    log << res.phases_csv() << "fixed time: " << res.message << "\n";
    ok = ok && res.success;
  }
  return ok ? kPass : kAssertionFailure;
}

}  // namespace torusctl::cli
