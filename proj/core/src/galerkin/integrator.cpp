#include "torusctl/galerkin/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torusctl/errors.hpp"

namespace torusctl {

void SimConfig::validate() const {
  if (!(nu >= 0.0)) throw ConfigError("viscosity must be non-negative");
  if (!(T > 0.0)) throw ConfigError("horizon T must be positive");
  if (M < 1) throw ConfigError("truncation M must be at least 1");
  if (k < 0) throw ConfigError("Sobolev order k must be non-negative");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
}

std::vector<double> ForcingSpec::breakpoints() const {
  std::vector<double> out = h.breakpoints();
  const auto e = eta.breakpoints();
  out.insert(out.end(), e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void ForcingSpec::accumulate(double t, double piece, DenseField& out) const {
  h.accumulate(t, piece, 1.0, out);
  eta.accumulate(t, piece, 1.0, out);
}

std::vector<double> event_grid(double t0, double t1, std::vector<double> extra) {
  std::vector<double> ev{t0};
  std::sort(extra.begin(), extra.end());
  const double tol = 1e-13 * std::max(1.0, std::abs(t1));
  for (double t : extra) {
    if (t > ev.back() + tol && t < t1 - tol) ev.push_back(t);
  }
  ev.push_back(t1);
  return ev;
}

namespace {

// exp(-nu |l|^2 h) applied mode-wise.
void apply_decay(const GalerkinSpace& space, double nu, double h, DenseField& u) {
  if (nu == 0.0) return;
  for (std::size_t i = 0; i < space.num_modes(); ++i) u.segment(6 * i, 6) *= std::exp(-nu * space.eigenvalue(i) * h);
}

DenseField nonlinear_rhs(const GalerkinSpace& space, const DenseField& u, double t, double piece,
                         const SimConfig& cfg, const ForcingSpec& forcing) {
  DenseField out = space.zero();
  forcing.accumulate(t, piece, out);
  if (!cfg.suppress_nonlinearity) space.add_B(u, u, -1.0, out);
  return out;
}

std::string blowup_message(double t, double norm, int k) {
  std::ostringstream os;
  os << "solution norm ||u||_" << k << " = " << norm << " exceeded the blow-up guard at t = " << t
     << " (the resolving operator is only defined while the norm stays finite)";
  return os.str();
}

}  // namespace

DenseField step_ns(const GalerkinSpace& space, const DenseField& u, double t, double dt, const SimConfig& cfg,
                   const ForcingSpec& forcing) {
  if (!(dt > 0.0)) throw std::invalid_argument("step size must be positive");
  const double piece = t + 0.5 * dt;
  const double nu = cfg.nu;

  const DenseField k1 = nonlinear_rhs(space, u, t, piece, cfg, forcing);
  DenseField uh = u;
  apply_decay(space, nu, 0.5 * dt, uh);  // E(h/2) u

  DenseField y = u + 0.5 * dt * k1;
  apply_decay(space, nu, 0.5 * dt, y);
  const DenseField k2 = nonlinear_rhs(space, y, t + 0.5 * dt, piece, cfg, forcing);

  y = uh + 0.5 * dt * k2;
  const DenseField k3 = nonlinear_rhs(space, y, t + 0.5 * dt, piece, cfg, forcing);

  DenseField e_k3 = k3;
  apply_decay(space, nu, 0.5 * dt, e_k3);
  y = uh;
  apply_decay(space, nu, 0.5 * dt, y);  // E(h) u
  const DenseField eu = y;
  y += dt * e_k3;
  const DenseField k4 = nonlinear_rhs(space, y, t + dt, piece, cfg, forcing);

  DenseField e_k1 = k1;
  apply_decay(space, nu, dt, e_k1);
  DenseField mid = k2 + k3;
  apply_decay(space, nu, 0.5 * dt, mid);
  return eu + (dt / 6.0) * (e_k1 + 2.0 * mid + k4);
}

Trajectory solve_ns(std::shared_ptr<const GalerkinSpace> space, const DenseField& u0, const SimConfig& cfg,
                    const ForcingSpec& forcing, const SolveOptions& opt) {
  cfg.validate();
  const double t0 = opt.t0;
  const double t1 = opt.t1 < 0.0 ? t0 + cfg.T : opt.t1;
  if (!(t1 > t0)) throw std::invalid_argument("empty integration interval");
  for (const ControlSignal* s : {&forcing.h, &forcing.eta}) {
    if (s->empty()) continue;
    const double tol = 1e-12 * std::max(1.0, std::abs(t1));
    if (s->t0() > t0 + tol || s->t1() < t1 - tol) {
      throw HorizonMismatch("forcing does not cover the integration interval");
    }
  }

  std::vector<double> extra = forcing.breakpoints();
  extra.insert(extra.end(), opt.sample_times.begin(), opt.sample_times.end());
  const std::vector<double> events = event_grid(t0, t1, extra);

  const GalerkinSpace& sp = *space;
  const double M = sp.cutoff();
  Trajectory traj(space);
  traj.push(t0, u0);
  DenseField u = u0;
  double t = t0;
  long steps = 0;
  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    const double a = events[e], b = events[e + 1];
    const long fixed_n = cfg.adaptive ? 0 : std::max(1L, long(std::ceil((b - a) / cfg.dt_max - 1e-9)));
    long fixed_i = 0;
    while (t < b) {
      double dt;
      bool last = false;
      if (cfg.adaptive) {
        const double scale = cfg.nu * M * M + sp.sobolev_norm(u, 1) * M;
        dt = scale > 0.0 ? std::min(cfg.dt_max, cfg.cfl / scale) : cfg.dt_max;
        // Avoid leaving a sliver before the event.
        if (t + dt >= b || b - (t + dt) < 1e-3 * dt) {
          dt = b - t;
          last = true;
        } else if (t + 2 * dt > b) dt = 0.5 * (b - t);
      } else {
        dt = (b - a) / fixed_n;
        last = fixed_i + 1 == fixed_n;
      }
      DenseField next;
      int halvings = 0;
      double sub_t = t;
      // Advance from t to t + dt, possibly in 2^halvings substeps.
      while (true) {
        const int parts = 1 << halvings;
        const double h = dt / parts;
        next = u;
        sub_t = t;
        bool ok = true;
        double norm = 0.0;
        for (int p = 0; p < parts; ++p) {
          next = step_ns(sp, next, sub_t, h, cfg, forcing);
          sub_t = (p + 1 == parts) ? t + dt : sub_t + h;
          norm = sp.sobolev_norm(next, cfg.k);
          if (!std::isfinite(norm) || norm > cfg.blowup_threshold) {
            ok = false;
            break;
          }
        }
        if (ok) break;
        if (++halvings > cfg.max_halvings) throw BlowUpError(blowup_message(sub_t, norm, cfg.k), t);
      }
      ++fixed_i;
      t = last ? b : a + fixed_i * dt;
      if (cfg.adaptive && !last) t = sub_t;
      u = std::move(next);
      if (++steps > cfg.max_steps) throw ResolutionBudgetExceeded("step budget exhausted", steps);
      const bool stop = opt.stop && opt.stop(t, u);
      const bool at_event = t >= b;
      if (stop || at_event || steps % std::max(1, opt.record_every) == 0) {
        if (t > traj.end()) traj.push(t, u);
      }
      if (stop) return traj;
    }
  }
  return traj;
}

Trajectory solve_linearised_euler(std::shared_ptr<const GalerkinSpace> space, const DenseField& v0,
                                  const FieldPath& w, const ControlSignal& g, const SimConfig& cfg,
                                  const SolveOptions& opt) {
  const double t0 = opt.t0;
  const double t1 = opt.t1 < 0.0 ? t0 + cfg.T : opt.t1;
  const double tol = 1e-12 * std::max(1.0, std::abs(t1));
  if (w.start() > t0 + tol || w.end() < t1 - tol) {
    throw HorizonMismatch("reference path does not cover the integration interval");
  }
  if (!g.empty() && (g.t0() > t0 + tol || g.t1() < t1 - tol)) {
    throw HorizonMismatch("control does not cover the integration interval");
  }
  std::vector<double> extra = g.breakpoints();
  const auto wb = w.breakpoints();
  extra.insert(extra.end(), wb.begin(), wb.end());
  extra.insert(extra.end(), opt.sample_times.begin(), opt.sample_times.end());
  const std::vector<double> events = event_grid(t0, t1, extra);

  const GalerkinSpace& sp = *space;
  auto rhs = [&](double t, double piece, const DenseField& v) {
    DenseField out = sp.zero();
    g.accumulate(t, piece, 1.0, out);
    const DenseField wt = w.at(t, piece);
    sp.add_B(v, wt, -1.0, out);
    sp.add_B(wt, v, -1.0, out);
    return out;
  };

  Trajectory traj(space);
  traj.push(t0, v0);
  DenseField v = v0;
  long steps = 0;
  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    const double a = events[e], b = events[e + 1];
    const long n = std::max(1L, long(std::ceil((b - a) / cfg.dt_max - 1e-9)));
    const double h = (b - a) / n;
    for (long i = 0; i < n; ++i) {
      const double t = a + i * h;
      const double piece = t + 0.5 * h;
      const DenseField k1 = rhs(t, piece, v);
      const DenseField k2 = rhs(t + 0.5 * h, piece, v + 0.5 * h * k1);
      const DenseField k3 = rhs(t + 0.5 * h, piece, v + 0.5 * h * k2);
      const DenseField k4 = rhs(t + h, piece, v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double tn = (i + 1 == n) ? b : t + h;
      ++steps;
      if (i + 1 == n || steps % std::max(1, opt.record_every) == 0) traj.push(tn, v);
    }
  }
  return traj;
}

std::vector<std::pair<double, double>> remainder_diagnostic(const Trajectory& u, const Trajectory& v,
                                                            const Trajectory& w, double delta, int k) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  const GalerkinSpace& sp = *u.space();
  std::vector<std::pair<double, double>> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u.time(i);
    const double s = t / delta;
    const DenseField r = u.state(i) - v.interpolate(s) - w.interpolate(s) / delta;
    out.emplace_back(t, sp.sobolev_norm(r, k));
  }
  return out;
}

}  // namespace torusctl
