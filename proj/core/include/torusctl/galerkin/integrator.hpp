#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "torusctl/galerkin/control_signal.hpp"
#include "torusctl/galerkin/trajectory.hpp"

namespace torusctl {

struct SimConfig {
  double nu = 0.1;  // viscosity; 0 selects Euler
  double T = 1.0;   // horizon length
  int M = 2;        // truncation |l|_inf <= M
  int k = 3;        // Sobolev order for diagnostics and the blow-up guard

  double dt_max = 0.01;
  double cfl = 0.25;
  // false: every interval between events is split into equal steps of at
  // most dt_max, independent of the state.
  bool adaptive = true;
  double blowup_threshold = 1e8;
  int max_halvings = 8;
  long max_steps = 20'000'000;

  // Test hook: drop B(u) from the right-hand side.
  bool suppress_nonlinearity = false;

  void validate() const;
};

// f = h + eta; either part may be empty.
struct ForcingSpec {
  ControlSignal h;
  ControlSignal eta;

  std::vector<double> breakpoints() const;
  void accumulate(double t, double piece, DenseField& out) const;
};

struct SolveOptions {
  double t0 = 0.0;
  // End of the horizon; negative means t0 + cfg.T.
  double t1 = -1.0;
  // Extra instants the step grid must hit (e.g. snapshot times).
  std::vector<double> sample_times;
  // Called after each accepted step; returning true ends the run there.
  std::function<bool(double, const DenseField&)> stop;
  // Keep every n-th step (the endpoints are always kept).
  int record_every = 1;
};

// t0, then every instant of `extra` strictly inside (t0, t1) in increasing
// order with near-duplicates merged, then t1. Both integrators step between
// consecutive entries.
std::vector<double> event_grid(double t0, double t1, std::vector<double> extra);

// One integrating-factor RK4 step of u' = -nu L u - Pi_M B(u) + Pi_M f.
DenseField step_ns(const GalerkinSpace& space, const DenseField& u, double t, double dt, const SimConfig& cfg,
                   const ForcingSpec& forcing);

// Throws BlowUpError when ||u||_k exceeds cfg.blowup_threshold even after
// the allowed step halvings.
Trajectory solve_ns(std::shared_ptr<const GalerkinSpace> space, const DenseField& u0, const SimConfig& cfg,
                    const ForcingSpec& forcing, const SolveOptions& opt = {});

// v' + Q(v, w(t)) = g(t) on [opt.t0, opt.t1], classical RK4.
// Throws HorizonMismatch if w or g does not cover the interval.
Trajectory solve_linearised_euler(std::shared_ptr<const GalerkinSpace> space, const DenseField& v0,
                                  const FieldPath& w, const ControlSignal& g, const SimConfig& cfg,
                                  const SolveOptions& opt = {});

// t -> ||u(t) - v(t/delta) - w(t/delta)/delta||_k on the time grid of u.
std::vector<std::pair<double, double>> remainder_diagnostic(const Trajectory& u, const Trajectory& v,
                                                            const Trajectory& w, double delta, int k);

}  // namespace torusctl
