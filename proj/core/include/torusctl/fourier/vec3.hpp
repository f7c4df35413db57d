#pragma once

#include <array>
#include <cmath>

#include "torusctl/fourier/scalar.hpp"
#include "torusctl/fourier/wave_vector.hpp"

namespace torusctl {

template <class S>
using Vec3 = std::array<S, 3>;

using Vec3d = Vec3<double>;
using Vec3q = Vec3<Rational>;

template <class S>
Vec3<S> zero_vec() {
  return {S(0), S(0), S(0)};
}

template <class S>
Vec3<S> to_vec(const IntVec3& v) {
  return {S(v[0]), S(v[1]), S(v[2])};
}

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
S dot(const Vec3<S>& a, const WaveVector& l) {
  return a[0] * l[0] + a[1] * l[1] + a[2] * l[2];
}

template <class S>
bool is_zero(const Vec3<S>& a) {
  return ScalarTraits<S>::is_zero(a[0]) && ScalarTraits<S>::is_zero(a[1]) &&
         ScalarTraits<S>::is_zero(a[2]);
}

template <class S>
Vec3<S>& axpy(const S& alpha, const Vec3<S>& x, Vec3<S>& y) {
  for (int i = 0; i < 3; ++i) y[i] += alpha * x[i];
  return y;
}

template <class S>
Vec3<S> operator+(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class S>
Vec3<S> operator-(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class S>
Vec3<S> operator-(const Vec3<S>& a) {
  return {-a[0], -a[1], -a[2]};
}

template <class S>
Vec3<S> scaled(const S& s, const Vec3<S>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

template <class S>
double max_abs(const Vec3<S>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::fabs(ScalarTraits<S>::to_double(v)));
  return m;
}

template <class S>
Vec3d to_double(const Vec3<S>& a) {
  return {ScalarTraits<S>::to_double(a[0]), ScalarTraits<S>::to_double(a[1]),
          ScalarTraits<S>::to_double(a[2])};
}

// P_l a = a - (<a,l>/|l|^2) l, the orthogonal projection onto l^perp.
// Exact for rationals.
template <class S>
Vec3<S> leray_project(const Vec3<S>& a, const WaveVector& l) {
  const S coef = dot(a, l) / S(l.norm2());
  return {a[0] - coef * l[0], a[1] - coef * l[1], a[2] - coef * l[2]};
}

}  // namespace torusctl
