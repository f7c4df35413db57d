#pragma once

#include <memory>
#include <vector>

#include "torusctl/galerkin/galerkin_space.hpp"

namespace torusctl {

// A DenseField-valued function of time with finitely many jump instants.
// `piece` is a time inside the same continuity interval as `s` and decides
// which one-sided value is returned at a jump.
class ControlSource {
 public:
  virtual ~ControlSource() = default;
  // out += coef * value(s)
  virtual void accumulate(double s, double piece, double coef, DenseField& out) const = 0;
  // Interior jump instants, sorted.
  virtual std::vector<double> breakpoints() const = 0;
};

// Constant value on each [edges[i], edges[i+1]).
class PiecewiseConstantSource final : public ControlSource {
 public:
  PiecewiseConstantSource(std::vector<double> edges, std::vector<DenseField> values);

  void accumulate(double s, double piece, double coef, DenseField& out) const override;
  std::vector<double> breakpoints() const override;

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<DenseField>& values() const { return values_; }

 private:
  std::vector<double> edges_;
  std::vector<DenseField> values_;
};

// Time-dependent control on [t0, t1]:
//   eta(t) = sum_j coef_j * source_j((t - offset_j) / time_scale_j).
class ControlSignal {
 public:
  ControlSignal() = default;
  ControlSignal(std::shared_ptr<const GalerkinSpace> space, double t0, double t1);

  struct Term {
    std::shared_ptr<const ControlSource> source;
    double coef = 1.0;
    double time_scale = 1.0;
    double offset = 0.0;
  };

  void add(std::shared_ptr<const ControlSource> source, double coef = 1.0, double time_scale = 1.0);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const std::shared_ptr<const GalerkinSpace>& space() const { return space_; }

  // out += value at t, on the continuity interval containing `piece`.
  void accumulate(double t, double piece, double coef, DenseField& out) const;
  DenseField evaluate(double t) const { return evaluate(t, t); }
  DenseField evaluate(double t, double piece) const;
  FieldD evaluate_field(double t) const;

  // Jump instants strictly inside (t0, t1), sorted and deduplicated.
  std::vector<double> breakpoints() const;

  // (integral over [t0, t1] of ||eta(t)||_k^2 dt)^(1/2), by 5-point
  // Gauss-Legendre on `subdivisions` panels between consecutive jumps.
  double l2_time_norm(int k = 0, int subdivisions = 8) const;

  ControlSignal scaled(double c) const;
  // The same signal on [t0 + dt, t1 + dt].
  ControlSignal shifted(double dt) const;
  // Term lists are concatenated; intervals and spaces must match.
  ControlSignal operator+(const ControlSignal& other) const;

 private:
  std::shared_ptr<const GalerkinSpace> space_;
  double t0_ = 0.0;
  double t1_ = 0.0;
  std::vector<Term> terms_;
};

}  // namespace torusctl
