#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/scalar.hpp"
#include "torusctl/fourier/vec3.hpp"
#include "torusctl/fourier/wave_vector.hpp"

namespace torusctl {

enum class Flavor { Cos, Sin };

template <class S>
struct ModeCoeffs {
  Vec3<S> cos = zero_vec<S>();
  Vec3<S> sin = zero_vec<S>();

  friend bool operator==(const ModeCoeffs&, const ModeCoeffs&) = default;
};

// Finite sum over canonical l of a_l cos<l,x> + b_l sin<l,x> with
// a_l, b_l in l^perp (divergence-free, mean zero).
//
// Normal form: only canonical wave vectors are stored, terms given on -l are
// folded in (cos even, sin odd), and vanishing pairs are dropped. For doubles
// a pair is vanishing when it is below kPruneRelative of the largest
// coefficient in the field.
template <class S>
class TrigField {
 public:
  using Scalar = S;
  using Vec = Vec3<S>;
  using Coeffs = ModeCoeffs<S>;
  using Map = std::map<WaveVector, Coeffs>;

  TrigField() = default;

  static TrigField single(Flavor f, const WaveVector& l, const Vec& amp) {
    TrigField u;
    u.add_term(f, l, amp);
    return u;
  }

  // Builds a field from raw (possibly non-solenoidal) coefficients on
  // canonical wave vectors by applying P_l to each of them.
  static TrigField from_unprojected(Map raw) {
    TrigField u;
    for (auto& [l, c] : raw) {
      c.cos = leray_project(c.cos, l);
      c.sin = leray_project(c.sin, l);
    }
    u.modes_ = std::move(raw);
    u.normalize();
    return u;
  }

  // Adds amp*cos<l,x> (or sin); l may be non-canonical. amp must be
  // orthogonal to l.
  void add_term(Flavor f, const WaveVector& l, const Vec& amp) {
    check_divergence(l, amp);
    fold(modes_, f, l, amp);
    normalize();
  }

  void add_mode(const WaveVector& l, const Vec& cos_amp, const Vec& sin_amp) {
    add_term(Flavor::Cos, l, cos_amp);
    add_term(Flavor::Sin, l, sin_amp);
  }

  // Accumulates into a raw map with the +-l folding convention.
  static void fold(Map& m, Flavor f, const WaveVector& l, const Vec& amp) {
    const bool canon = l.is_canonical();
    Coeffs& c = m[canon ? l : -l];
    if (f == Flavor::Cos) {
      for (int i = 0; i < 3; ++i) c.cos[i] += amp[i];
    } else if (canon) {
      for (int i = 0; i < 3; ++i) c.sin[i] += amp[i];
    } else {
      for (int i = 0; i < 3; ++i) c.sin[i] -= amp[i];
    }
  }

  const Map& modes() const { return modes_; }
  bool empty() const { return modes_.empty(); }
  std::size_t size() const { return modes_.size(); }

  const Coeffs* find(const WaveVector& l) const {
    auto it = modes_.find(l.canonical());
    return it == modes_.end() ? nullptr : &it->second;
  }

  int max_wavenumber() const {
    int m = 0;
    for (const auto& [l, c] : modes_) m = std::max(m, l.norm_inf());
    return m;
  }

  double max_coefficient() const {
    double m = 0.0;
    for (const auto& [l, c] : modes_) {
      m = std::max({m, max_abs(c.cos), max_abs(c.sin)});
    }
    return m;
  }

  TrigField& operator+=(const TrigField& o) {
    for (const auto& [l, c] : o.modes_) {
      Coeffs& mine = modes_[l];
      for (int i = 0; i < 3; ++i) {
        mine.cos[i] += c.cos[i];
        mine.sin[i] += c.sin[i];
      }
    }
    normalize();
    return *this;
  }

  TrigField& operator-=(const TrigField& o) {
    for (const auto& [l, c] : o.modes_) {
      Coeffs& mine = modes_[l];
      for (int i = 0; i < 3; ++i) {
        mine.cos[i] -= c.cos[i];
        mine.sin[i] -= c.sin[i];
      }
    }
    normalize();
    return *this;
  }

  TrigField& operator*=(const S& s) {
    for (auto& [l, c] : modes_) {
      for (int i = 0; i < 3; ++i) {
        c.cos[i] *= s;
        c.sin[i] *= s;
      }
    }
    normalize();
    return *this;
  }

  friend TrigField operator+(TrigField a, const TrigField& b) { return a += b; }
  friend TrigField operator-(TrigField a, const TrigField& b) { return a -= b; }
  friend TrigField operator*(const S& s, TrigField a) { return a *= s; }
  friend bool operator==(const TrigField&, const TrigField&) = default;

  // Drops vanishing coefficient pairs.
  void normalize() {
    if constexpr (ScalarTraits<S>::kExact) {
      std::erase_if(modes_, [](const auto& kv) {
        return is_zero(kv.second.cos) && is_zero(kv.second.sin);
      });
    } else {
      const double threshold = ScalarTraits<S>::kPruneRelative * max_coefficient();
      std::erase_if(modes_, [threshold](const auto& kv) {
        return std::max(max_abs(kv.second.cos), max_abs(kv.second.sin)) <= threshold;
      });
    }
  }

  TrigField<double> to_double() const {
    typename TrigField<double>::Map m;
    for (const auto& [l, c] : modes_) {
      m[l] = {torusctl::to_double(c.cos), torusctl::to_double(c.sin)};
    }
    return TrigField<double>::from_normal_map(std::move(m));
  }

  // Trusts the caller that m is already in normal form up to pruning.
  static TrigField from_normal_map(Map m) {
    TrigField u;
    u.modes_ = std::move(m);
    u.normalize();
    return u;
  }

 private:
  static void check_divergence(const WaveVector& l, const Vec& amp) {
    if constexpr (ScalarTraits<S>::kExact) {
      if (!ScalarTraits<S>::is_zero(dot(amp, l))) {
        std::ostringstream os;
        os << "coefficient not orthogonal to wave vector " << l;
        throw DivergenceViolation(os.str());
      }
    } else {
      const double scale = std::sqrt(dot(amp, amp)) * std::sqrt(double(l.norm2()));
      if (std::fabs(dot(amp, l)) > ScalarTraits<S>::kDivergenceRelative * scale) {
        std::ostringstream os;
        os << "coefficient not orthogonal to wave vector " << l;
        throw DivergenceViolation(os.str());
      }
    }
  }

  Map modes_;
};

using FieldQ = TrigField<Rational>;
using FieldD = TrigField<double>;

// L^2 inner product with unit volume normalization: sum of a.a' + b.b'.
template <class S>
S l2_inner(const TrigField<S>& u, const TrigField<S>& v) {
  S acc(0);
  for (const auto& [l, c] : u.modes()) {
    if (const auto* d = v.find(l)) acc += dot(c.cos, d->cos) + dot(c.sin, d->sin);
  }
  return acc;
}

// sum_l |l|^{2k} (|a_l|^2 + |b_l|^2), exact in rational mode.
template <class S>
S sobolev_norm_sq(const TrigField<S>& u, int k) {
  if (k < 0) throw std::invalid_argument("Sobolev order must be non-negative");
  S acc(0);
  for (const auto& [l, c] : u.modes()) {
    S w(1);
    for (int i = 0; i < k; ++i) w *= S(l.norm2());
    acc += w * (dot(c.cos, c.cos) + dot(c.sin, c.sin));
  }
  return acc;
}

template <class S>
double sobolev_norm(const TrigField<S>& u, int k) {
  return std::sqrt(ScalarTraits<S>::to_double(sobolev_norm_sq(u, k)));
}

// Stokes operator L = -Laplacian: scales each pair by |l|^2.
template <class S>
TrigField<S> stokes_apply(const TrigField<S>& u) {
  typename TrigField<S>::Map m;
  for (const auto& [l, c] : u.modes()) {
    const S w(l.norm2());
    m[l] = {scaled(w, c.cos), scaled(w, c.sin)};
  }
  return TrigField<S>::from_normal_map(std::move(m));
}

}  // namespace torusctl
