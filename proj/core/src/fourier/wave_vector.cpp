#include "torusctl/fourier/wave_vector.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "torusctl/errors.hpp"

namespace torusctl {

WaveVector::WaveVector(int l1, int l2, int l3) : c_{l1, l2, l3} {
  if (l1 == 0 && l2 == 0 && l3 == 0) {
    throw InvalidWaveVector("wave vector must be nonzero");
  }
}

std::optional<WaveVector> WaveVector::try_make(const IntVec3& c) {
  if (c[0] == 0 && c[1] == 0 && c[2] == 0) return std::nullopt;
  return WaveVector(c);
}

bool WaveVector::is_canonical() const {
  for (int v : c_) {
    if (v != 0) return v > 0;
  }
  return false;
}

int WaveVector::norm_inf() const {
  return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
}

std::optional<WaveVector> sum(const WaveVector& a, const WaveVector& b) {
  return WaveVector::try_make({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
}

std::optional<WaveVector> difference(const WaveVector& a, const WaveVector& b) {
  return WaveVector::try_make({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

IntVec3 cross(const IntVec3& a, const IntVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

long dot(const IntVec3& a, const IntVec3& b) {
  return long(a[0]) * b[0] + long(a[1]) * b[1] + long(a[2]) * b[2];
}

bool parallel(const WaveVector& a, const WaveVector& b) {
  const IntVec3 c = cross(a.components(), b.components());
  return c[0] == 0 && c[1] == 0 && c[2] == 0;
}

std::ostream& operator<<(std::ostream& os, const WaveVector& l) {
  return os << '(' << l[0] << ',' << l[1] << ',' << l[2] << ')';
}

}  // namespace torusctl
