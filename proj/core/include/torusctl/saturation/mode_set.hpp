#pragma once

#include <istream>
#include <set>
#include <string>
#include <vector>

#include "torusctl/fourier/wave_vector.hpp"

namespace torusctl {

// Finite symmetric set K of nonzero wave vectors.
class ModeSet {
 public:
  ModeSet() = default;

  // Throws NonSymmetricModeSet unless l in K implies -l in K.
  explicit ModeSet(const std::vector<WaveVector>& vectors);

  // Adds the missing negatives. `completed` reports whether any were added.
  static ModeSet symmetrized(const std::vector<WaveVector>& vectors, bool* completed = nullptr);

  // The set {+-e1, +-e2, +-e3}.
  static ModeSet unit_axes();

  const std::set<WaveVector>& vectors() const { return vectors_; }
  std::vector<WaveVector> canonical_pairs() const;
  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  bool contains(const WaveVector& l) const { return vectors_.count(l) > 0; }

  // K_j = K_{j-1} together with l1 + l2 for l1 in K_{j-1}, l2 in K, l1 not
  // parallel to l2; expansion(0) is K itself.
  ModeSet expansion(int j) const;

  friend bool operator==(const ModeSet&, const ModeSet&) = default;

 private:
  std::set<WaveVector> vectors_;
};

// One integer triple per line, '#' comments allowed. Missing negatives are
// added and reported through `completed`.
ModeSet read_mode_set(std::istream& is, bool* completed = nullptr);

std::string format_mode_set(const ModeSet& k);

}  // namespace torusctl
