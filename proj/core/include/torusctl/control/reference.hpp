#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "torusctl/control/observable_family.hpp"
#include "torusctl/galerkin/control_signal.hpp"
#include "torusctl/galerkin/trajectory.hpp"
#include "torusctl/saturation/rational_subspace.hpp"

namespace torusctl {

// Reference path
//   w(t) = A sum_i psi_i(t) e_i,  psi_i = phi(t) * integral_0^t phi_i,
// with envelope phi(t) = (T - t) / T and e_i the cos/sin field of slot i
// polarized along signed_polarization(l). The amplitude A scales w only; it
// does not change any membership property.
//
// zeta = w' + B(w), and L w = A sum_i psi_i |l_i|^2 e_i.
class ReferenceTrajectory {
 public:
  ReferenceTrajectory(std::shared_ptr<const GalerkinSpace> space, ObservableFamily family, double amplitude = 1.0);

  const std::shared_ptr<const GalerkinSpace>& space() const { return space_; }
  const ObservableFamily& family() const { return family_; }
  double horizon() const { return family_.horizon(); }
  double amplitude() const { return amp_; }
  std::size_t num_slots() const { return family_.size(); }

  // Unit-polarized slot fields and their integer-polarized rational twins.
  const std::vector<FieldD>& slot_fields() const { return slot_fields_; }
  std::vector<FieldQ> exact_slot_fields() const;

  double envelope(double t) const;
  double envelope_derivative() const;
  double psi(std::size_t i, double t) const;
  double psi_dot(std::size_t i, double t, double piece) const;

  DenseField w(double t) const;
  DenseField w_dot(double t, double piece) const;
  DenseField nonlinear_term(double t) const;  // Pi_M B(w(t))
  DenseField zeta(double t, double piece) const;
  DenseField stokes_w(double t) const;

  // Largest H^0 norm of the part of B(e_i, e_j) that falls outside the
  // Galerkin window; 0 when the window holds every product.
  double window_loss() const { return window_loss_; }

  std::shared_ptr<const ControlSource> zeta_source() const;
  std::shared_ptr<const ControlSource> stokes_source() const;
  std::shared_ptr<const FieldPath> path() const;

  std::vector<double> breakpoints() const { return family_.all_jumps(); }

 private:
  std::shared_ptr<const GalerkinSpace> space_;
  ObservableFamily family_;
  double amp_;
  std::vector<FieldD> slot_fields_;
  std::vector<DenseField> e_;       // dense slot fields
  std::vector<DenseField> le_;      // |l|^2 e_i
  std::vector<DenseField> pair_;    // B(e_i,e_i) on the diagonal, Q(e_i,e_j) for i<j
  double window_loss_ = 0.0;

  const DenseField& pair(std::size_t i, std::size_t j) const { return pair_[i * e_.size() + j]; }
};

ReferenceTrajectory build_reference(std::shared_ptr<const GalerkinSpace> space, const ModeSet& k,
                                    const ObservableFamily& family, double amplitude = 1.0);

// Orthonormal basis (frame coordinates, one column per direction) of the
// part of a rational subspace inside the Galerkin window.
Eigen::MatrixXd frame_basis(const GalerkinSpace& space, const RationalSubspace& h);

struct ReferenceCertificate {
  bool endpoints_zero = false;
  // Every e_i and every pairwise product lies in the subspace, in exact
  // arithmetic. zeta(t) and L w(t) are combinations of these for every t.
  bool exact_membership = false;
  double worst_zeta_residual = 0.0;  // relative, over the float samples
  double worst_stokes_residual = 0.0;
  std::size_t samples = 0;
};

// Checks the reference against h (normally H_1(K)) exactly and at `samples`
// seeded random times in floating point.
ReferenceCertificate certify_reference(const ReferenceTrajectory& ref, const RationalSubspace& h, int samples,
                                       unsigned long seed);

}  // namespace torusctl
