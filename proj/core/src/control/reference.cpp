#include "torusctl/control/reference.hpp"

#include <Eigen/QR>
#include <cmath>
#include <random>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/polarization.hpp"

namespace torusctl {

namespace {

FieldD slot_field(const ObservableFamily::Slot& s) {
  const Vec3d p = signed_polarization(s.l);
  return FieldD::single(s.flavor, s.l, p);
}

FieldQ exact_slot_field(const ObservableFamily::Slot& s) {
  const IntVec3 p = signed_integer_polarization(s.l);
  return FieldQ::single(s.flavor, s.l, to_vec<Rational>(p));
}

class ZetaSource final : public ControlSource {
 public:
  explicit ZetaSource(const ReferenceTrajectory& ref) : ref_(ref) {}
  void accumulate(double s, double piece, double coef, DenseField& out) const override {
    out += coef * ref_.zeta(s, piece);
  }
  std::vector<double> breakpoints() const override { return ref_.breakpoints(); }

 private:
  ReferenceTrajectory ref_;
};

class StokesSource final : public ControlSource {
 public:
  explicit StokesSource(const ReferenceTrajectory& ref) : ref_(ref) {}
  void accumulate(double s, double, double coef, DenseField& out) const override {
    out += coef * ref_.stokes_w(s);
  }
  std::vector<double> breakpoints() const override { return {}; }

 private:
  ReferenceTrajectory ref_;
};

class ReferencePath final : public FieldPath {
 public:
  explicit ReferencePath(const ReferenceTrajectory& ref) : ref_(ref) {}
  double start() const override { return 0.0; }
  double end() const override { return ref_.horizon(); }
  DenseField at(double t, double) const override { return ref_.w(t); }
  std::vector<double> breakpoints() const override { return ref_.breakpoints(); }

 private:
  ReferenceTrajectory ref_;
};

}  // namespace

ReferenceTrajectory::ReferenceTrajectory(std::shared_ptr<const GalerkinSpace> space, ObservableFamily family,
                                         double amplitude)
    : space_(std::move(space)), family_(std::move(family)), amp_(amplitude) {
  const GalerkinSpace& sp = *space_;
  for (const auto& s : family_.slots()) {
    slot_fields_.push_back(slot_field(s));
    e_.push_back(sp.from_field(slot_fields_.back()));
    le_.push_back(double(s.l.norm2()) * e_.back());
  }
  const std::size_t n = e_.size();
  pair_.assign(n * n, DenseField());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const FieldD full = i == j ? bilinear_B(slot_fields_[i]) : bilinear_Q(slot_fields_[i], slot_fields_[j]);
      const DenseField d = sp.from_field(full);
      const FieldD lost = full - sp.to_field(d);
      window_loss_ = std::max(window_loss_, sobolev_norm(lost, 0));
      pair_[i * n + j] = d;
    }
  }
}

std::vector<FieldQ> ReferenceTrajectory::exact_slot_fields() const {
  std::vector<FieldQ> out;
  for (const auto& s : family_.slots()) out.push_back(exact_slot_field(s));
  return out;
}

double ReferenceTrajectory::envelope(double t) const { return (horizon() - t) / horizon(); }

double ReferenceTrajectory::envelope_derivative() const { return -1.0 / horizon(); }

double ReferenceTrajectory::psi(std::size_t i, double t) const {
  return amp_ * envelope(t) * family_.integral(i, t);
}

double ReferenceTrajectory::psi_dot(std::size_t i, double t, double piece) const {
  return amp_ * (envelope_derivative() * family_.integral(i, t) + envelope(t) * family_.value(i, piece));
}

DenseField ReferenceTrajectory::w(double t) const {
  DenseField out = space_->zero();
  for (std::size_t i = 0; i < e_.size(); ++i) out += psi(i, t) * e_[i];
  return out;
}

DenseField ReferenceTrajectory::w_dot(double t, double piece) const {
  DenseField out = space_->zero();
  for (std::size_t i = 0; i < e_.size(); ++i) out += psi_dot(i, t, piece) * e_[i];
  return out;
}

DenseField ReferenceTrajectory::nonlinear_term(double t) const {
  const std::size_t n = e_.size();
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = psi(i, t);
  DenseField out = space_->zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == 0.0) continue;
    for (std::size_t j = i; j < n; ++j) out += (p[i] * p[j]) * pair(i, j);
  }
  return out;
}

DenseField ReferenceTrajectory::zeta(double t, double piece) const { return w_dot(t, piece) + nonlinear_term(t); }

DenseField ReferenceTrajectory::stokes_w(double t) const {
  DenseField out = space_->zero();
  for (std::size_t i = 0; i < le_.size(); ++i) out += psi(i, t) * le_[i];
  return out;
}

std::shared_ptr<const ControlSource> ReferenceTrajectory::zeta_source() const {
  return std::make_shared<ZetaSource>(*this);
}

std::shared_ptr<const ControlSource> ReferenceTrajectory::stokes_source() const {
  return std::make_shared<StokesSource>(*this);
}

std::shared_ptr<const FieldPath> ReferenceTrajectory::path() const { return std::make_shared<ReferencePath>(*this); }

ReferenceTrajectory build_reference(std::shared_ptr<const GalerkinSpace> space, const ModeSet& k,
                                    const ObservableFamily& family, double amplitude) {
  std::size_t expected = 2 * k.size();
  bool match = family.size() == expected;
  if (match) {
    std::size_t i = 0;
    for (const auto& l : k.vectors()) {
      for (Flavor f : {Flavor::Cos, Flavor::Sin}) {
        const auto& s = family.slots()[i++];
        match = match && s.l == l && s.flavor == f;
      }
    }
  }
  if (!match) throw std::invalid_argument("observable family does not match the mode set");
  return ReferenceTrajectory(std::move(space), family, amplitude);
}

Eigen::MatrixXd frame_basis(const GalerkinSpace& space, const RationalSubspace& h) {
  const auto basis = h.basis();
  Eigen::MatrixXd cols(space.frame_dim(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    cols.col(j) = space.to_frame(space.from_field(basis[j].to_double()));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols);
  qr.setThreshold(1e-12);
  const Eigen::Index r = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(cols.rows(), r);
  return q;
}

ReferenceCertificate certify_reference(const ReferenceTrajectory& ref, const RationalSubspace& h, int samples,
                                       unsigned long seed) {
  ReferenceCertificate cert;
  const GalerkinSpace& sp = *ref.space();
  const double T = ref.horizon();
  cert.endpoints_zero = ref.w(0.0).isZero(0.0) && ref.w(T).isZero(0.0);

  const auto e = ref.exact_slot_fields();
  bool ok = true;
  for (std::size_t i = 0; i < e.size() && ok; ++i) {
    ok = h.contains(e[i]);
    for (std::size_t j = i; j < e.size() && ok; ++j) ok = h.contains(bilinear_Q(e[i], e[j]));
  }
  cert.exact_membership = ok;

  const Eigen::MatrixXd q = frame_basis(sp, h);
  auto residual = [&](const DenseField& u) {
    const Eigen::VectorXd x = sp.to_frame(u);
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    return (x - q * (q.transpose() * x)).norm() / n;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, T);
  for (int s = 0; s < samples; ++s) {
    const double t = dist(rng);
    cert.worst_zeta_residual = std::max(cert.worst_zeta_residual, residual(ref.zeta(t, t)));
    cert.worst_stokes_residual = std::max(cert.worst_stokes_residual, residual(ref.stokes_w(t)));
  }
  cert.samples = std::size_t(std::max(samples, 0));
  return cert;
}

}  // namespace torusctl
