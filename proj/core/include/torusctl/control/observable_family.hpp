#pragma once

#include <vector>

#include "torusctl/fourier/trig_field.hpp"
#include "torusctl/saturation/mode_set.hpp"

namespace torusctl {

// Scalar functions phi_i on [0, T], one per (l in K, flavor) slot.
//
// Square-wave family: slot i gets the i-th prime p >= 3 and
//   phi_i(t) = (-1)^floor(p t / T),
// jumping exactly at T k / p, 0 < k < p. Two such grids never share an
// interior point (T k / p = T k' / p' forces p | k), so the jump sets are
// disjoint without any collision removal.
//
// Constant family: every slot carries the same constant, a deliberately
// non-observable choice used as a falsification case.
class ObservableFamily {
 public:
  enum class Kind { SquareWave, Constant };

  struct Slot {
    WaveVector l;  // signed member of K
    Flavor flavor;
    int prime;  // 0 for the constant family
  };

  static ObservableFamily square_waves(const ModeSet& k, double T);
  static ObservableFamily constant(const ModeSet& k, double T, double value);

  Kind kind() const { return kind_; }
  double horizon() const { return T_; }
  std::size_t size() const { return slots_.size(); }
  const std::vector<Slot>& slots() const { return slots_; }

  // phi_i on the continuity interval containing `piece`.
  double value(std::size_t i, double piece) const;
  // integral of phi_i over [0, t], exact.
  double integral(std::size_t i, double t) const;
  std::vector<double> jumps(std::size_t i) const;
  std::vector<double> all_jumps() const;
  bool jump_sets_disjoint() const;
  double sup_norm() const;

 private:
  ObservableFamily(Kind kind, double T, std::vector<Slot> slots, double constant)
      : kind_(kind), T_(T), slots_(std::move(slots)), constant_(constant) {}

  Kind kind_;
  double T_;
  std::vector<Slot> slots_;
  double constant_ = 0.0;
};

// The first n primes >= 3.
std::vector<int> odd_primes(std::size_t n);

ObservableFamily make_observable_family(const ModeSet& k, double T);

}  // namespace torusctl
