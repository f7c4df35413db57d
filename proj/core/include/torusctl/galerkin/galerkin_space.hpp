#pragma once

#include <Eigen/Core>
#include <optional>
#include <unordered_map>
#include <vector>

#include "torusctl/fourier/polarization.hpp"
#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

// Dense coefficient vector on a GalerkinSpace: 6 doubles per mode,
// (a_1, a_2, a_3, b_1, b_2, b_3) in the order of GalerkinSpace::modes().
using DenseField = Eigen::VectorXd;

// The canonical modes with |l|_inf <= M and the projected bilinear forms on
// them. Immutable after construction.
class GalerkinSpace {
 public:
  explicit GalerkinSpace(int M);

  int cutoff() const { return M_; }
  std::size_t num_modes() const { return modes_.size(); }
  // Length of a DenseField.
  std::size_t dim() const { return 6 * modes_.size(); }
  // Dimension of the divergence-free subspace: 4 per mode.
  std::size_t frame_dim() const { return 4 * modes_.size(); }

  const std::vector<WaveVector>& modes() const { return modes_; }
  const WaveVector& mode(std::size_t i) const { return modes_[i]; }
  std::optional<std::size_t> index(const WaveVector& l) const;
  const PolarizationBasis& polarization(std::size_t i) const { return pol_[i]; }

  DenseField zero() const { return DenseField::Zero(dim()); }

  // Modes outside the window are dropped (Galerkin projection).
  DenseField from_field(const FieldD& u) const;
  FieldD to_field(const DenseField& u) const;
  bool in_window(const FieldD& u) const;

  // out += coef * Pi_M B(u, v)
  void add_B(const DenseField& u, const DenseField& v, double coef, DenseField& out) const;
  DenseField B(const DenseField& u, const DenseField& v) const;
  DenseField Q(const DenseField& u, const DenseField& v) const;

  DenseField stokes(const DenseField& u) const;
  double sobolev_norm(const DenseField& u, int k) const;
  double sobolev_norm_sq(const DenseField& u, int k) const;
  double l2_inner(const DenseField& u, const DenseField& v) const;

  // Coordinates in the orthonormal frame (a.l+, a.l-, b.l+, b.l-) per mode.
  // An isometry for the L^2 product.
  Eigen::VectorXd to_frame(const DenseField& u) const;
  DenseField from_frame(const Eigen::VectorXd& x) const;

  // |l|^2 of mode i.
  double eigenvalue(std::size_t i) const { return lam_[i]; }
  // Diagonal weight |l|^k for each frame coordinate.
  Eigen::VectorXd frame_weights(int k) const;

  // Largest |<a,l>| / (|a||l|) over all coefficients; 0 for exact fields.
  double divergence_residual(const DenseField& u) const;

 private:
  struct Triad {
    int sum = -1;
    bool sum_flip = false;  // sum lands on the non-canonical member
    int diff = -1;
    bool diff_flip = false;
  };

  int M_;
  std::vector<WaveVector> modes_;
  std::vector<std::array<double, 3>> lvec_;
  std::vector<double> lam_;
  std::vector<PolarizationBasis> pol_;
  std::unordered_map<WaveVector, std::size_t> index_;
  std::vector<Triad> triads_;  // n x n
};

}  // namespace torusctl
