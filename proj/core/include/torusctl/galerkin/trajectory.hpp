#pragma once

#include <memory>
#include <string>
#include <vector>

#include "torusctl/galerkin/galerkin_space.hpp"

namespace torusctl {

// A DenseField-valued path on [start(), end()] that integrators may query.
class FieldPath {
 public:
  virtual ~FieldPath() = default;
  virtual double start() const = 0;
  virtual double end() const = 0;
  // Value at t on the continuity interval containing `piece`.
  virtual DenseField at(double t, double piece) const = 0;
  virtual std::vector<double> breakpoints() const { return {}; }
};

// Time-sampled states produced by an integrator. Times strictly increase.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::shared_ptr<const GalerkinSpace> space) : space_(std::move(space)) {}

  void push(double t, DenseField u);
  // Appends `other`, dropping its first sample when it repeats the last time.
  void append(const Trajectory& other);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<DenseField>& states() const { return states_; }
  double time(std::size_t i) const { return times_[i]; }
  const DenseField& state(std::size_t i) const { return states_[i]; }
  double start() const { return times_.front(); }
  double end() const { return times_.back(); }
  const DenseField& final_state() const { return states_.back(); }
  FieldD field(std::size_t i) const { return space_->to_field(states_[i]); }
  const std::shared_ptr<const GalerkinSpace>& space() const { return space_; }

  double sobolev_norm(std::size_t i, int k) const { return space_->sobolev_norm(states_[i], k); }
  std::vector<double> sobolev_series(int k) const;

  // Piecewise-linear in coefficient space. For diagnostics only.
  DenseField interpolate(double t) const;

  // CSV rows "t,sobolev_k_norm,l2_norm" without header.
  std::string norms_csv(int k) const;

 private:
  std::shared_ptr<const GalerkinSpace> space_;
  std::vector<double> times_;
  std::vector<DenseField> states_;
};

// Exposes a trajectory as a FieldPath through interpolation.
class InterpolatedPath final : public FieldPath {
 public:
  explicit InterpolatedPath(const Trajectory& traj) : traj_(traj) {}
  double start() const override { return traj_.start(); }
  double end() const override { return traj_.end(); }
  DenseField at(double t, double) const override { return traj_.interpolate(t); }

 private:
  const Trajectory& traj_;
};

// The constant path u on [t0, t1].
class ConstantPath final : public FieldPath {
 public:
  ConstantPath(DenseField u, double t0, double t1) : u_(std::move(u)), t0_(t0), t1_(t1) {}
  double start() const override { return t0_; }
  double end() const override { return t1_; }
  DenseField at(double, double) const override { return u_; }

 private:
  DenseField u_;
  double t0_, t1_;
};

}  // namespace torusctl
