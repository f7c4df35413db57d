#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusctl/saturation/mode_set.hpp"
#include "torusctl/saturation/rational_subspace.hpp"

namespace torusctl {

// Spanning family of H_0(K): integer polarizations of each canonical pair,
// times cos and sin. 4 fields per pair.
std::vector<FieldQ> h0_generators(const ModeSet& k);

RationalSubspace h0_subspace(const ModeSet& k);

// span(H_prev and Q(eta, xi) for eta in basis(H_prev), xi in basis(H0)).
RationalSubspace next_subspace(const RationalSubspace& h_prev, const RationalSubspace& h0);

// Every divergence-free field on canonical modes with |l|_inf <= M:
// 4 integer-polarized generators per mode.
std::vector<FieldQ> truncation_generators(int M);
std::size_t truncation_dimension(int M);

// Incremental computation of H_0(K) within H_1(K) within ... Only the
// generators accepted at the previous level are multiplied against H_0(K),
// which spans the same H_i as the full product set.
class SaturationChain {
 public:
  explicit SaturationChain(const ModeSet& k);

  int level() const { return level_; }
  const RationalSubspace& current() const { return space_; }
  const ModeSet& mode_set() const { return k_; }

  // Advances to the next level; returns the number of new dimensions.
  std::size_t advance();

  // Subspace H_i(K) snapshot at the current level.
  RationalSubspace snapshot() const { return space_; }

 private:
  ModeSet k_;
  std::vector<FieldQ> h0_;
  std::vector<FieldQ> frontier_;
  RationalSubspace space_;
  int level_ = 0;
};

RationalSubspace h_subspace(const ModeSet& k, int level);

struct LevelRecord {
  int level = 0;
  std::size_t dim = 0;
  int max_wavenumber = 0;
  std::vector<std::size_t> window_dims;  // dim(H_i within |l|_inf <= M), per cutoff
  std::vector<bool> covered;             // per cutoff
};

enum class SaturationVerdict {
  Covered,      // every cutoff covered
  FixedPoint,   // H_{i+1} = H_i without coverage
  Unreachable,  // lattice of K is proper and windowed dims stopped changing
  LevelLimit,   // max_level reached first
};

std::string to_string(SaturationVerdict v);

struct SaturationLedger {
  std::vector<int> cutoffs;  // 1..M
  std::vector<LevelRecord> levels;
  std::vector<std::optional<int>> first_covering_level;  // per cutoff
  SaturationVerdict verdict = SaturationVerdict::LevelLimit;
  bool generator = false;

  bool covered(int M) const;
  // CSV with columns level, dim, max_wavenumber, covered_M1, ...
  std::string to_csv() const;
};

// Iterates the chain until the truncations |l|_inf <= m, m = 1..M, are all
// contained in H_i(K), or until the chain stops making progress inside the
// window, or max_level is reached.
//
// For a non-generator K the full H_i(K) can keep growing forever (e.g. the
// even sublattice behaves like a dilated copy of a generator), so progress
// is judged on the windowed dimensions: the run stops as Unreachable when
// the lattice spanned by K misses a mode of the window (so coverage is
// impossible) and the windowed dimensions were unchanged for `patience`
// consecutive levels.
SaturationLedger certify_saturation(const ModeSet& k, int M, int max_level, int patience = 2);

}  // namespace torusctl
