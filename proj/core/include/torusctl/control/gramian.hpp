#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "torusctl/control/reference.hpp"
#include "torusctl/galerkin/integrator.hpp"

namespace torusctl {

struct GramianOptions {
  int segments = 16;
  // Tikhonov weight lambda = lambda_rel * sigma_max^2.
  double lambda_rel = 1e-8;
  // Singular values below sigma_max / cond_limit are dropped.
  double cond_limit = 1e12;
  // Rank test: sigma > rank_tol * sigma_max.
  double rank_tol = 1e-8;
  // Refinement stops when the probe residual changes by less than this
  // fraction between two doublings, or after max_refinements doublings.
  double stall = 0.10;
  int max_refinements = 3;
  unsigned long probe_seed = 7;
};

// Endpoint map g -> A_T(0, g) of v' + Q(v, w) = g, v(0) = 0, restricted to
// atoms g = d * 1_[t_s, t_{s+1}) with d running over an orthonormal basis of
// the control directions and [t_s, t_{s+1}) over `segments` equal pieces of
// [0, T]. Columns are endpoints in frame coordinates, atom (s, d) at
// column s * num_directions + d.
class GramianSolver {
 public:
  GramianSolver(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref, const SimConfig& cfg,
                Eigen::MatrixXd directions, const GramianOptions& opt = {});

  const std::shared_ptr<const GalerkinSpace>& space() const { return space_; }
  // The caller's config with dt_max capped by cfl / (M max_t ||w(t)||_1).
  const SimConfig& config() const { return cfg_; }
  const GramianOptions& options() const { return opt_; }
  int segments() const { return opt_.segments; }
  std::size_t num_directions() const { return std::size_t(dirs_.cols()); }
  std::size_t num_atoms() const { return std::size_t(resp_.cols()); }
  const Eigen::MatrixXd& directions() const { return dirs_; }
  const Eigen::MatrixXd& response() const { return resp_; }
  double horizon() const { return T_; }

  // Singular values of the unweighted response matrix, descending.
  const Eigen::VectorXd& singular_values() const { return sv_; }
  std::size_t rank() const;
  bool full_rank() const { return rank() == space_->frame_dim(); }
  double lambda() const { return lambda_; }

  // Atom coefficients minimizing
  //   ||A c - f||_k^2 + lambda ||g_c||_{L^2}^2.
  Eigen::VectorXd coefficients(const DenseField& target) const;
  ControlSignal control(const Eigen::VectorXd& coefficients) const;
  ControlSignal right_inverse(const DenseField& target) const { return control(coefficients(target)); }

  // Endpoint predicted by the response matrix.
  DenseField predicted_endpoint(const Eigen::VectorXd& coefficients) const;
  // Endpoint of an independent solve_linearised_euler run with v(0) = v0.
  DenseField replay_endpoint(const DenseField& v0, const ControlSignal& g) const;
  // A_T(u0, 0).
  DenseField homogeneous_endpoint(const DenseField& u0) const;
  // ||A_T(0, R f) - f||_k / ||f||_{k+1}, through the replay.
  double replay_residual(const DenseField& target) const;

  const ReferenceTrajectory& reference() const { return ref_; }

 private:
  void assemble();
  void factorize();

  std::shared_ptr<const GalerkinSpace> space_;
  ReferenceTrajectory ref_;
  std::shared_ptr<const FieldPath> path_;
  SimConfig cfg_;
  Eigen::MatrixXd dirs_;  // frame_dim x d, orthonormal
  GramianOptions opt_;
  double T_;

  Eigen::MatrixXd resp_;
  Eigen::VectorXd sv_;
  // Factorization of W A / sqrt(h), W = diag(|l|^k).
  Eigen::MatrixXd U_, V_;
  Eigen::VectorXd s_;
  Eigen::VectorXd weights_;
  double lambda_ = 0.0;
};

GramianSolver assemble_linear_map(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref,
                                  const SimConfig& cfg, const Eigen::MatrixXd& directions,
                                  const GramianOptions& opt = {});

struct RefinementRecord {
  int segments;
  double probe_residual;
};

// Starts at opt.segments and doubles until the probe residual stalls.
GramianSolver refine_until_stall(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref,
                                 const SimConfig& cfg, const Eigen::MatrixXd& directions, const GramianOptions& opt,
                                 std::vector<RefinementRecord>* history = nullptr);

// Seeded probe target used by the refinement loop.
DenseField probe_target(const GalerkinSpace& space, int k, unsigned long seed);

}  // namespace torusctl
