#pragma once

#include <vector>

#include "torusctl/fourier/wave_vector.hpp"
#include "torusctl/saturation/mode_set.hpp"

namespace torusctl {

// Integer lattice spanned by a finite set of integer vectors, held in
// Hermite normal form (row echelon over Z, positive pivots, entries above
// each pivot reduced modulo it).
class IntegerLattice {
 public:
  explicit IntegerLattice(const std::vector<IntVec3>& generators);
  explicit IntegerLattice(const ModeSet& k);

  int rank() const { return static_cast<int>(rows_.size()); }
  // Product of the pivots; the index [Z^3 : L] when rank() == 3.
  long index() const;
  bool contains(const IntVec3& v) const;
  bool is_full() const { return rank() == 3 && index() == 1; }

  const std::vector<IntVec3>& hermite_rows() const { return rows_; }

 private:
  std::vector<IntVec3> rows_;
};

// True iff the integer combinations of K give all of Z^3.
bool is_generator(const ModeSet& k);

}  // namespace torusctl
