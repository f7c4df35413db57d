#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>

namespace torusctl {

using IntVec3 = std::array<int, 3>;

// A nonzero integer lattice vector l, indexing the mode pair +-l.
class WaveVector {
 public:
  // Throws InvalidWaveVector for the zero vector.
  WaveVector(int l1, int l2, int l3);
  explicit WaveVector(const IntVec3& c) : WaveVector(c[0], c[1], c[2]) {}

  // Returns nullopt for the zero vector instead of throwing.
  static std::optional<WaveVector> try_make(const IntVec3& c);

  int operator[](std::size_t i) const { return c_[i]; }
  const IntVec3& components() const { return c_; }

  // Canonical iff the first nonzero component is positive.
  bool is_canonical() const;
  WaveVector canonical() const { return is_canonical() ? *this : -*this; }
  WaveVector operator-() const { return WaveVector(-c_[0], -c_[1], -c_[2]); }

  long norm2() const {
    return long(c_[0]) * c_[0] + long(c_[1]) * c_[1] + long(c_[2]) * c_[2];
  }
  int norm_inf() const;

  friend auto operator<=>(const WaveVector&, const WaveVector&) = default;
  friend bool operator==(const WaveVector&, const WaveVector&) = default;

 private:
  IntVec3 c_;
};

std::optional<WaveVector> sum(const WaveVector& a, const WaveVector& b);
std::optional<WaveVector> difference(const WaveVector& a, const WaveVector& b);

// True if a and b are linearly dependent.
bool parallel(const WaveVector& a, const WaveVector& b);

IntVec3 cross(const IntVec3& a, const IntVec3& b);
long dot(const IntVec3& a, const IntVec3& b);

std::ostream& operator<<(std::ostream& os, const WaveVector& l);

}  // namespace torusctl

template <>
struct std::hash<torusctl::WaveVector> {
  std::size_t operator()(const torusctl::WaveVector& l) const noexcept {
    std::uint64_t h = 0;
    for (int i = 0; i < 3; ++i) {
      h = h * 0x9E3779B97F4A7C15ull + static_cast<std::uint32_t>(l[i]);
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};
