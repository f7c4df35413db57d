#include "torusctl/galerkin/galerkin_space.hpp"

#include <cmath>

#include "torusctl/errors.hpp"

namespace torusctl {

GalerkinSpace::GalerkinSpace(int M) : M_(M) {
  if (M < 1) throw std::invalid_argument("truncation cutoff must be at least 1");
  for (int i = 0; i <= M; ++i)
    for (int j = -M; j <= M; ++j)
      for (int k = -M; k <= M; ++k) {
        auto l = WaveVector::try_make({i, j, k});
        if (l && l->is_canonical()) modes_.push_back(*l);
      }
  const std::size_t n = modes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = modes_[i];
    index_.emplace(l, i);
    lvec_.push_back({double(l[0]), double(l[1]), double(l[2])});
    lam_.push_back(double(l.norm2()));
    pol_.push_back(polarization_basis(l));
  }
  triads_.resize(n * n);
  auto locate = [this](const std::optional<WaveVector>& w, int& idx, bool& flip) {
    if (!w) return;
    auto it = index_.find(w->canonical());
    if (it == index_.end()) return;
    idx = int(it->second);
    flip = !w->is_canonical();
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      Triad& t = triads_[p * n + q];
      locate(sum(modes_[p], modes_[q]), t.sum, t.sum_flip);
      locate(difference(modes_[p], modes_[q]), t.diff, t.diff_flip);
    }
  }
}

std::optional<std::size_t> GalerkinSpace::index(const WaveVector& l) const {
  auto it = index_.find(l);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DenseField GalerkinSpace::from_field(const FieldD& u) const {
  DenseField out = zero();
  for (const auto& [l, c] : u.modes()) {
    auto it = index_.find(l);
    if (it == index_.end()) continue;
    const std::size_t o = 6 * it->second;
    for (int d = 0; d < 3; ++d) {
      out[o + d] = c.cos[d];
      out[o + 3 + d] = c.sin[d];
    }
  }
  return out;
}

FieldD GalerkinSpace::to_field(const DenseField& u) const {
  FieldD::Map m;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const std::size_t o = 6 * i;
    ModeCoeffs<double> c;
    bool nonzero = false;
    for (int d = 0; d < 3; ++d) {
      c.cos[d] = u[o + d];
      c.sin[d] = u[o + 3 + d];
      nonzero = nonzero || u[o + d] != 0.0 || u[o + 3 + d] != 0.0;
    }
    if (nonzero) m.emplace(modes_[i], c);
  }
  return FieldD::from_normal_map(std::move(m));
}

bool GalerkinSpace::in_window(const FieldD& u) const { return u.max_wavenumber() <= M_; }

void GalerkinSpace::add_B(const DenseField& u, const DenseField& v, double coef, DenseField& out) const {
  const std::size_t n = modes_.size();
  thread_local std::vector<double> raw;
  raw.assign(6 * n, 0.0);
  thread_local std::vector<std::size_t> vnz;
  vnz.clear();
  for (std::size_t q = 0; q < n; ++q) {
    const double* vq = v.data() + 6 * q;
    if (vq[0] != 0.0 || vq[1] != 0.0 || vq[2] != 0.0 || vq[3] != 0.0 || vq[4] != 0.0 || vq[5] != 0.0) {
      vnz.push_back(q);
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    const double* up = u.data() + 6 * p;
    if (up[0] == 0.0 && up[1] == 0.0 && up[2] == 0.0 && up[3] == 0.0 && up[4] == 0.0 && up[5] == 0.0) continue;
    for (std::size_t q : vnz) {
      const Triad& t = triads_[p * n + q];
      if (t.sum < 0 && t.diff < 0) continue;
      const auto& lq = lvec_[q];
      const double alpha = up[0] * lq[0] + up[1] * lq[1] + up[2] * lq[2];
      const double beta = up[3] * lq[0] + up[4] * lq[1] + up[5] * lq[2];
      if (alpha == 0.0 && beta == 0.0) continue;
      const double* vq = v.data() + 6 * q;
      for (int d = 0; d < 3; ++d) {
        const double ab = alpha * vq[3 + d], ba = beta * vq[d];
        const double aa = alpha * vq[d], bb = beta * vq[3 + d];
        if (t.sum >= 0) {
          double* o = raw.data() + 6 * t.sum;
          o[d] += 0.5 * (ab + ba);
          o[3 + d] += (t.sum_flip ? -0.5 : 0.5) * (bb - aa);
        }
        if (t.diff >= 0) {
          double* o = raw.data() + 6 * t.diff;
          o[d] += 0.5 * (ab - ba);
          o[3 + d] += (t.diff_flip ? -0.5 : 0.5) * (aa + bb);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = lvec_[i];
    double* r = raw.data() + 6 * i;
    for (int h = 0; h < 2; ++h) {
      double* a = r + 3 * h;
      const double s = (a[0] * l[0] + a[1] * l[1] + a[2] * l[2]) / lam_[i];
      for (int d = 0; d < 3; ++d) out[6 * i + 3 * h + d] += coef * (a[d] - s * l[d]);
    }
  }
}

DenseField GalerkinSpace::B(const DenseField& u, const DenseField& v) const {
  DenseField out = zero();
  add_B(u, v, 1.0, out);
  return out;
}

DenseField GalerkinSpace::Q(const DenseField& u, const DenseField& v) const {
  DenseField out = zero();
  add_B(u, v, 1.0, out);
  add_B(v, u, 1.0, out);
  return out;
}

DenseField GalerkinSpace::stokes(const DenseField& u) const {
  DenseField out = u;
  for (std::size_t i = 0; i < modes_.size(); ++i) out.segment(6 * i, 6) *= lam_[i];
  return out;
}

double GalerkinSpace::sobolev_norm_sq(const DenseField& u, int k) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    acc += std::pow(lam_[i], k) * u.segment(6 * i, 6).squaredNorm();
  }
  return acc;
}

double GalerkinSpace::sobolev_norm(const DenseField& u, int k) const {
  return std::sqrt(sobolev_norm_sq(u, k));
}

double GalerkinSpace::l2_inner(const DenseField& u, const DenseField& v) const { return u.dot(v); }

Eigen::VectorXd GalerkinSpace::to_frame(const DenseField& u) const {
  Eigen::VectorXd x(frame_dim());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& p = pol_[i];
    for (int h = 0; h < 2; ++h) {
      const double* a = u.data() + 6 * i + 3 * h;
      x[4 * i + 2 * h] = a[0] * p.l_plus[0] + a[1] * p.l_plus[1] + a[2] * p.l_plus[2];
      x[4 * i + 2 * h + 1] = a[0] * p.l_minus[0] + a[1] * p.l_minus[1] + a[2] * p.l_minus[2];
    }
  }
  return x;
}

DenseField GalerkinSpace::from_frame(const Eigen::VectorXd& x) const {
  DenseField u = zero();
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& p = pol_[i];
    for (int h = 0; h < 2; ++h) {
      for (int d = 0; d < 3; ++d) {
        u[6 * i + 3 * h + d] = x[4 * i + 2 * h] * p.l_plus[d] + x[4 * i + 2 * h + 1] * p.l_minus[d];
      }
    }
  }
  return u;
}

Eigen::VectorXd GalerkinSpace::frame_weights(int k) const {
  Eigen::VectorXd w(frame_dim());
  for (std::size_t i = 0; i < modes_.size(); ++i) w.segment(4 * i, 4).setConstant(std::pow(lam_[i], 0.5 * k));
  return w;
}

double GalerkinSpace::divergence_residual(const DenseField& u) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& l = lvec_[i];
    for (int h = 0; h < 2; ++h) {
      const double* a = u.data() + 6 * i + 3 * h;
      const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
      if (na == 0.0) continue;
      const double r = std::fabs(a[0] * l[0] + a[1] * l[1] + a[2] * l[2]) / (na * std::sqrt(lam_[i]));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

}  // namespace torusctl
