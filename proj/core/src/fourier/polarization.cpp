#include "torusctl/fourier/polarization.hpp"

#include <cmath>

namespace torusctl {

std::pair<IntVec3, IntVec3> integer_polarization(const WaveVector& l) {
  const WaveVector c = l.canonical();
  const IntVec3 ez{0, 0, 1};
  const IntVec3 ey{0, 1, 0};
  IntVec3 plus = cross(ez, c.components());
  if (plus == IntVec3{0, 0, 0}) plus = cross(ey, c.components());
  const IntVec3 minus = cross(c.components(), plus);
  return {plus, minus};
}

namespace {

Vec3d normalized(const IntVec3& v) {
  const double n = std::sqrt(static_cast<double>(dot(v, v)));
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

PolarizationBasis polarization_basis(const WaveVector& l) {
  const auto [plus, minus] = integer_polarization(l);
  return {l.canonical(), normalized(plus), normalized(minus)};
}

Vec3d signed_polarization(const WaveVector& l) {
  const PolarizationBasis basis = polarization_basis(l);
  return l.is_canonical() ? basis.l_plus : basis.l_minus;
}

IntVec3 signed_integer_polarization(const WaveVector& l) {
  const auto [plus, minus] = integer_polarization(l);
  return l.is_canonical() ? plus : minus;
}

}  // namespace torusctl
