#include "torusctl/control/steering.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/field_io.hpp"

namespace torusctl {

long estimate_steps(const ReferenceTrajectory& ref, const SimConfig& cfg, double delta, double state_bound) {
  const GalerkinSpace& sp = *ref.space();
  const double T = ref.horizon();
  double wmax = 0.0;
  for (int i = 0; i <= 64; ++i) wmax = std::max(wmax, sp.sobolev_norm(ref.w(T * i / 64.0), 1));
  const double M = sp.cutoff();
  const double scale = cfg.nu * M * M + (wmax / delta + state_bound) * M;
  const double dt = std::min(cfg.dt_max, cfg.cfl / scale);
  return long(std::ceil(T * delta / dt)) + long(ref.breakpoints().size()) + 1;
}

SteeringPlan synthesize(const DenseField& u0, const DenseField& u1, double delta, const GramianSolver& g,
                        const ReferenceTrajectory& ref, const SimConfig& cfg) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const GalerkinSpace& sp = *g.space();
  const double bound = std::max(sp.sobolev_norm(u0, 1), sp.sobolev_norm(u1, 1));
  const long need = estimate_steps(ref, cfg, delta, bound);
  if (cfg.adaptive && need > cfg.max_steps) {
    std::ostringstream os;
    os << "delta = " << delta << " needs about " << need << " integrator steps, budget is " << cfg.max_steps;
    throw ResolutionBudgetExceeded(os.str(), need);
  }

  SteeringPlan plan;
  plan.delta = delta;
  plan.horizon = ref.horizon();
  plan.nu = cfg.nu;
  plan.correction = u1 - g.homogeneous_endpoint(u0);
  plan.coefficients = g.coefficients(plan.correction);
  const ControlSignal gs = g.control(plan.coefficients);
  plan.linear_endpoint = g.replay_endpoint(u0, gs);
  plan.gramian_residual = sp.sobolev_norm(plan.linear_endpoint - u1, cfg.k);

  const double dur = plan.duration();
  plan.affine = ControlSignal(g.space(), 0.0, dur);
  plan.affine.add(gs.terms().front().source, 1.0 / delta, delta);
  plan.fixed = ControlSignal(g.space(), 0.0, dur);
  plan.fixed.add(ref.zeta_source(), 1.0 / (delta * delta), delta);
  plan.fixed.add(ref.stokes_source(), cfg.nu / delta, delta);
  return plan;
}

void write_plan(std::ostream& os, const SteeringPlan& plan, const GramianSolver& g) {
  const ReferenceTrajectory& ref = g.reference();
  const GalerkinSpace& sp = *g.space();
  os << std::setprecision(17);
  os << "torusctl-plan 1\n";
  os << "delta " << plan.delta << "\n";
  os << "horizon " << plan.horizon << "\n";
  os << "nu " << plan.nu << "\n";
  os << "amplitude " << ref.amplitude() << "\n";
  os << "segments " << g.segments() << "\n";
  os << "directions " << g.num_directions() << "\n";
  os << "family " << (ref.family().kind() == ObservableFamily::Kind::SquareWave ? "square" : "constant") << "\n";
  for (const auto& s : ref.family().slots()) {
    os << "slot " << s.l[0] << ' ' << s.l[1] << ' ' << s.l[2] << ' ' << (s.flavor == Flavor::Cos ? "cos" : "sin")
       << ' ' << s.prime << "\n";
  }
  for (std::size_t j = 0; j < g.num_directions(); ++j) {
    os << "direction " << j << "\n";
    write_field(os, sp.to_field(sp.from_frame(g.directions().col(Eigen::Index(j)))));
    os << "end\n";
  }
  os << "coefficients\n";
  for (Eigen::Index i = 0; i < plan.coefficients.size(); ++i) os << plan.coefficients[i] << "\n";
}

std::string ConvergenceReport::verdict() const {
  if (!has_verdict) return "none";
  return monotone ? "monotone" : "not-monotone";
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "delta,endpoint_error_k,remainder_endpoint,gramian_residual\n";
  for (const auto& r : rows) {
    os << r.delta << ',' << r.endpoint_error << ',' << r.remainder_endpoint << ',' << r.gramian_residual << "\n";
  }
  return os.str();
}

namespace {

Trajectory run_plan(const std::shared_ptr<const GalerkinSpace>& space, const DenseField& u0, const SteeringPlan& plan,
                    const SimConfig& cfg, const ControlSignal& h, double t0, double t1 = -1.0) {
  ForcingSpec forcing;
  forcing.h = h;
  forcing.eta = plan.eta().shifted(t0);
  SolveOptions opt;
  opt.t0 = t0;
  opt.t1 = t1 < 0.0 ? t0 + plan.duration() : t1;
  return solve_ns(space, u0, cfg, forcing, opt);
}

}  // namespace

ConvergenceReport steer_small_time(const DenseField& u0, const DenseField& u1, const std::vector<double>& deltas,
                                   const GramianSolver& g, const ReferenceTrajectory& ref, const SimConfig& cfg,
                                   const ControlSignal& h) {
  const auto& space = g.space();
  const GalerkinSpace& sp = *space;
  ConvergenceReport rep;
  for (double delta : deltas) {
    const SteeringPlan plan = synthesize(u0, u1, delta, g, ref, cfg);
    const Trajectory u = run_plan(space, u0, plan, cfg, h, 0.0);
    const DenseField& end = u.final_state();
    // w(T) = 0, so the remainder at the endpoint is u(T delta) - v(T).
    SweepRow row;
    row.delta = delta;
    row.endpoint_error = sp.sobolev_norm(end - u1, cfg.k);
    row.remainder_endpoint = sp.sobolev_norm(end - plan.linear_endpoint - ref.w(ref.horizon()) / delta, cfg.k);
    row.gramian_residual = plan.gramian_residual;
    rep.rows.push_back(row);
  }
  if (rep.rows.size() >= 2) {
    rep.has_verdict = true;
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
      rep.monotone = rep.monotone && rep.rows[i].endpoint_error < rep.rows[i - 1].endpoint_error;
    }
  }
  if (!deltas.empty()) {
    ForcingSpec free;
    free.h = h;
    SolveOptions opt;
    opt.t1 = ref.horizon() * deltas.back();
    const Trajectory f = solve_ns(space, u0, cfg, free, opt);
    rep.free_flow_gap = sp.sobolev_norm(u1 - f.final_state(), cfg.k);
  }
  return rep;
}

std::string FixedTimeResult::phases_csv() const {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "phase,kind,t_start,t_end,error_end_k\n";
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto& p = phases[i];
    os << i << ',' << (p.kind == Phase::Kind::Steer ? "steer" : "coast") << ',' << p.t0 << ',' << p.t1 << ','
       << p.error_end << "\n";
  }
  return os.str();
}

FixedTimeResult steer_fixed_time(const DenseField& u0, const DenseField& u1, double horizon,
                                 const GramianSolver& g, const ReferenceTrajectory& ref, const SimConfig& cfg,
                                 const FixedTimeOptions& opt, const ControlSignal& h) {
  if (!(opt.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  const auto& space = g.space();
  const GalerkinSpace& sp = *space;
  const double Tref = ref.horizon();
  const double eps = opt.epsilon;
  const double trigger = opt.trigger_fraction * eps;
  const double tol = 1e-12 * horizon;
  auto error = [&](const DenseField& u) { return sp.sobolev_norm(u - u1, cfg.k); };

  FixedTimeResult res;
  res.epsilon = eps;
  res.trajectory = Trajectory(space);
  res.trajectory.push(0.0, u0);
  DenseField u = u0;
  double t = 0.0;
  int steer_phases = 0;
  double min_dwell = -1.0;

  auto steer = [&](double delta, bool final_phase) {
    const SteeringPlan plan = synthesize(u, u1, delta, g, ref, cfg);
    const double t_end = final_phase ? horizon : t + plan.duration();
    Trajectory part = run_plan(space, u, plan, cfg, h, t, t_end);
    u = part.final_state();
    res.trajectory.append(part);
    res.phases.push_back({Phase::Kind::Steer, t, t_end, error(u)});
    t = t_end;
    ++steer_phases;
  };

  const double r = opt.r_fraction * eps;
  bool missed = false;
  while (t < horizon - tol && !missed) {
    const double remaining = horizon - t;
    const bool need_steer = steer_phases == 0 || error(u) >= trigger;
    if (need_steer && steer_phases <= opt.resteer_budget) {
      const bool final_phase = remaining <= Tref * opt.delta;
      const double delta = final_phase ? remaining / Tref : opt.delta;
      if (delta >= opt.min_delta_fraction * opt.delta) {
        steer(delta, final_phase);
        // A phase that lands outside the r-ball means the steering itself is
        // not accurate enough; coasting or re-steering cannot repair that.
        missed = res.phases.back().error_end > r && !final_phase;
        continue;
      }
    }
    // Coast with eta = 0 until the trigger or the horizon.
    ForcingSpec free;
    free.h = h;
    SolveOptions so;
    so.t0 = t;
    so.t1 = horizon;
    const double shortest = Tref * opt.delta * opt.min_delta_fraction;
    if (steer_phases <= opt.resteer_budget) {
      so.stop = [&](double s, const DenseField& v) { return horizon - s >= shortest && error(v) >= trigger; };
    }
    Trajectory part = solve_ns(space, u, cfg, free, so);
    const double t_end = part.end();
    u = part.final_state();
    res.trajectory.append(part);
    res.phases.push_back({Phase::Kind::Coast, t, t_end, error(u)});
    if (t_end < horizon - tol) {
      const double dwell = t_end - t;
      min_dwell = min_dwell < 0.0 ? dwell : std::min(min_dwell, dwell);
    }
    t = t_end < horizon - tol ? t_end : horizon;
  }

  res.total_time = res.trajectory.end();
  res.final_error = error(u);
  res.min_dwell = std::max(min_dwell, 0.0);
  res.success = res.final_error < eps && !missed;
  std::ostringstream os;
  if (missed) os << "steering phase ended outside the ball of radius " << r << "; ";
  os << (res.success ? "reached" : "missed") << " the ball of radius " << eps << " at t = " << res.total_time
     << " with error " << res.final_error << " after " << steer_phases << " steering phase(s)";
  if (!res.success && min_dwell >= 0.0) os << "; shortest dwell " << min_dwell;
  res.message = os.str();
  return res;
}

}  // namespace torusctl
