#pragma once

#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

namespace detail {

// Adds the product-to-sum expansion of (u_p . grad) v_q for one mode p of u
// and one mode q of v into a raw (unprojected) accumulator.
template <class S>
void accumulate_convection(typename TrigField<S>::Map& out, const WaveVector& p,
                           const ModeCoeffs<S>& up, const WaveVector& q,
                           const ModeCoeffs<S>& vq) {
  using F = TrigField<S>;
  const S alpha = dot(up.cos, q);
  const S beta = dot(up.sin, q);
  if (ScalarTraits<S>::is_zero(alpha) && ScalarTraits<S>::is_zero(beta)) return;
  const S half(S(1) / S(2));

  Vec3<S> cos_sum, cos_diff, sin_sum, sin_diff;
  for (int i = 0; i < 3; ++i) {
    const S ab = alpha * vq.sin[i];
    const S ba = beta * vq.cos[i];
    const S aa = alpha * vq.cos[i];
    const S bb = beta * vq.sin[i];
    cos_sum[i] = half * (ab + ba);
    cos_diff[i] = half * (ab - ba);
    sin_sum[i] = half * (bb - aa);
    sin_diff[i] = half * (aa + bb);
  }
  if (auto s = sum(p, q)) {
    F::fold(out, Flavor::Cos, *s, cos_sum);
    F::fold(out, Flavor::Sin, *s, sin_sum);
  }
  if (auto d = difference(p, q)) {
    F::fold(out, Flavor::Cos, *d, cos_diff);
    F::fold(out, Flavor::Sin, *d, sin_diff);
  }
}

}  // namespace detail

// B(u,v) = Pi((u . grad) v), mode by mode.
template <class S>
TrigField<S> bilinear_B(const TrigField<S>& u, const TrigField<S>& v) {
  typename TrigField<S>::Map raw;
  for (const auto& [p, up] : u.modes()) {
    for (const auto& [q, vq] : v.modes()) {
      detail::accumulate_convection<S>(raw, p, up, q, vq);
    }
  }
  return TrigField<S>::from_unprojected(std::move(raw));
}

// Q(v,w) = B(v,w) + B(w,v), summed before projection.
template <class S>
TrigField<S> bilinear_Q(const TrigField<S>& v, const TrigField<S>& w) {
  typename TrigField<S>::Map raw;
  for (const auto& [p, vp] : v.modes()) {
    for (const auto& [q, wq] : w.modes()) {
      detail::accumulate_convection<S>(raw, p, vp, q, wq);
      detail::accumulate_convection<S>(raw, q, wq, p, vp);
    }
  }
  return TrigField<S>::from_unprojected(std::move(raw));
}

template <class S>
TrigField<S> bilinear_B(const TrigField<S>& u) {
  return bilinear_B(u, u);
}

struct ClosedFormOptions {
  // Mutation hook for the identity suite: negates the cos-cos formula.
  bool flip_cos_cos_sign = false;
};

// Q(a f1<l1,x>, b f2<l2,x>) from the closed-form single-mode identities
//   cos/sin: 1/2 [cos<l1-l2> P d + cos<l1+l2> P s]
//   cos/cos: 1/2 [sin<l1-l2> P d - sin<l1+l2> P s]
//   sin/sin: 1/2 [sin<l1-l2> P d + sin<l1+l2> P s]
// with d = <a,l2> b - <b,l1> a, s = <a,l2> b + <b,l1> a and P the projection
// onto the perp of the respective wave vector. sin/cos follows by symmetry.
template <class S>
TrigField<S> q_closed_form(Flavor f1, const WaveVector& l1, const Vec3<S>& a,
                           Flavor f2, const WaveVector& l2, const Vec3<S>& b,
                           const ClosedFormOptions& opt = {}) {
  if (f1 == Flavor::Sin && f2 == Flavor::Cos) {
    return q_closed_form(f2, l2, b, f1, l1, a, opt);
  }
  const S al2 = dot(a, l2);
  const S bl1 = dot(b, l1);
  Vec3<S> d, s;
  for (int i = 0; i < 3; ++i) {
    d[i] = al2 * b[i] - bl1 * a[i];
    s[i] = al2 * b[i] + bl1 * a[i];
  }
  const S half(S(1) / S(2));
  S diff_sign(1), sum_sign(1);
  Flavor out = Flavor::Sin;
  if (f1 == Flavor::Cos && f2 == Flavor::Sin) {
    out = Flavor::Cos;
  } else if (f1 == Flavor::Cos && f2 == Flavor::Cos) {
    sum_sign = S(-1);
    if (opt.flip_cos_cos_sign) {
      diff_sign = S(-1);
      sum_sign = S(1);
    }
  }

  typename TrigField<S>::Map raw;
  if (auto dl = difference(l1, l2)) {
    TrigField<S>::fold(raw, out, *dl, scaled(S(half * diff_sign), leray_project(d, *dl)));
  }
  if (auto sl = sum(l1, l2)) {
    TrigField<S>::fold(raw, out, *sl, scaled(S(half * sum_sign), leray_project(s, *sl)));
  }
  return TrigField<S>::from_unprojected(std::move(raw));
}

}  // namespace torusctl
