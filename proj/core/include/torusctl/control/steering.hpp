#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "torusctl/control/gramian.hpp"

namespace torusctl {

// eta_delta on [0, T delta], T the reference horizon:
//   affine(t) = g(t / delta) / delta,           g = R(u1 - A_T(u0, 0))
//   fixed(t)  = zeta(t / delta) / delta^2 + nu L w(t / delta) / delta.
struct SteeringPlan {
  double delta = 0.0;
  double horizon = 0.0;  // T of the reference; the plan lasts horizon * delta
  double nu = 0.0;
  DenseField correction;          // f = u1 - A_T(u0, 0)
  Eigen::VectorXd coefficients;   // atom coefficients of g = R(f)
  DenseField linear_endpoint;     // v(T) = A_T(u0, g), replayed
  double gramian_residual = 0.0;  // ||v(T) - u1||_k
  ControlSignal affine;
  ControlSignal fixed;

  double duration() const { return horizon * delta; }
  ControlSignal eta() const { return affine + fixed; }
};

// Throws ResolutionBudgetExceeded when the estimated number of integrator
// steps on [0, T delta] exceeds cfg.max_steps.
SteeringPlan synthesize(const DenseField& u0, const DenseField& u1, double delta, const GramianSolver& g,
                        const ReferenceTrajectory& ref, const SimConfig& cfg);

// Step count estimate for solve_ns driven by a plan with this delta.
long estimate_steps(const ReferenceTrajectory& ref, const SimConfig& cfg, double delta, double state_bound);

// Text layout:
//   torusctl-plan 1
//   delta, horizon, nu, amplitude, segments, directions  (one "key value" per line)
//   family <square|constant> then one "slot l1 l2 l3 cos|sin prime" line per slot
//   direction <j> followed by its field in field_io format and "end"
//   coefficients followed by one decimal per line
void write_plan(std::ostream& os, const SteeringPlan& plan, const GramianSolver& g);

struct SweepRow {
  double delta;
  double endpoint_error;      // ||u(T delta) - u1||_k
  double remainder_endpoint;  // ||u(T delta) - v(T) - w(T) / delta||_k
  double gramian_residual;    // ||v(T) - u1||_k
};

struct ConvergenceReport {
  std::vector<SweepRow> rows;
  // Only meaningful with at least two rows.
  bool has_verdict = false;
  bool monotone = false;
  double free_flow_gap = 0.0;  // ||u1 - S_{T delta_last}(u0, h)||_k

  std::string verdict() const;
  // Header "delta,endpoint_error_k,remainder_endpoint,gramian_residual".
  std::string to_csv() const;
};

// Runs solve_ns on [0, T delta] with f = h + eta_delta for each delta.
ConvergenceReport steer_small_time(const DenseField& u0, const DenseField& u1, const std::vector<double>& deltas,
                                   const GramianSolver& g, const ReferenceTrajectory& ref, const SimConfig& cfg,
                                   const ControlSignal& h = {});

struct FixedTimeOptions {
  double epsilon = 0.0;         // target ball radius in H^k
  double r_fraction = 0.5;      // steering aims inside the ball of radius r = r_fraction * epsilon
  double trigger_fraction = 0.9;  // coasting stops once the error reaches this fraction of epsilon
  double delta = 0.025;
  int resteer_budget = 3;       // steering phases after the first one
  double min_delta_fraction = 0.125;  // shortest final phase, as a fraction of delta
};

struct Phase {
  enum class Kind { Steer, Coast } kind;
  double t0, t1;
  double error_end;
};

struct FixedTimeResult {
  Trajectory trajectory;
  std::vector<Phase> phases;
  double final_error = 0.0;
  double epsilon = 0.0;
  double total_time = 0.0;
  double min_dwell = 0.0;  // shortest completed coasting phase that ended on the trigger
  bool success = false;
  std::string message;

  std::string phases_csv() const;
};

// Steers from u0 to within epsilon of u1 at exactly time `horizon`:
// small-time steering, coasting with eta = 0 while the error stays below the
// trigger, re-steering when it does not, and a final steering phase sized to
// end at `horizon` when the trigger fires too late for a full one.
FixedTimeResult steer_fixed_time(const DenseField& u0, const DenseField& u1, double horizon,
                                 const GramianSolver& g, const ReferenceTrajectory& ref, const SimConfig& cfg,
                                 const FixedTimeOptions& opt, const ControlSignal& h = {});

}  // namespace torusctl
