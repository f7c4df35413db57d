#pragma once

#include <vector>

#include "torusctl/fourier/trig_field.hpp"
#include "torusctl/saturation/mode_set.hpp"
#include "torusctl/saturation/rational_subspace.hpp"

namespace torusctl {

// Unit vector (l1 x l2)/|l1 x l2|, sign chosen so that the first nonzero
// component of l1 x l2 is positive. Throws DegeneratePair if l1 || l2.
Vec3d common_perp(const WaveVector& l1, const WaveVector& l2);

// The same direction unnormalized (the sign-fixed cross product itself), so
// that witnesses stay rational.
IntVec3 integer_common_perp(const WaveVector& l1, const WaveVector& l2);

struct WitnessTerm {
  Rational coefficient;
  FieldQ left;
  FieldQ right;
};

// sum_j coefficient_j * Q(left_j, right_j), claimed to equal `claimed`.
struct WitnessExpression {
  std::vector<WitnessTerm> terms;
  FieldQ claimed;

  FieldQ evaluate() const;
};

struct SumModeWitness {
  WitnessExpression cos_part;  // d cos<l1 + l2, x>
  WitnessExpression sin_part;  // d sin<l1 + l2, x>
};

// With d = integer_common_perp(l1, l2) and b in l2^perp, <b, l1> = 1:
//   d cos<l1+l2> = Q(d cos<l1>, b sin<l2>) + Q(b cos<l2>, d sin<l1>)
//   d sin<l1+l2> = Q(d sin<l1>, b sin<l2>) - Q(d cos<l1>, b cos<l2>)
SumModeWitness witness_sum_mode(const WaveVector& l1, const WaveVector& l2);

// Checks H_i(K_j) within H_{i+3}(K_{j-1}) by exact containment, K_j the
// expansion sequence of K.
bool check_inclusion_chain(const ModeSet& k, int i, int j);

}  // namespace torusctl
