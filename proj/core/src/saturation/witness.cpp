#include "torusctl/saturation/witness.hpp"

#include <cmath>
#include <sstream>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/saturation/saturation.hpp"

namespace torusctl {

IntVec3 integer_common_perp(const WaveVector& l1, const WaveVector& l2) {
  if (parallel(l1, l2)) {
    std::ostringstream os;
    os << "wave vectors " << l1 << " and " << l2 << " are parallel";
    throw DegeneratePair(os.str());
  }
  IntVec3 d = cross(l1.components(), l2.components());
  for (int v : d) {
    if (v != 0) {
      if (v < 0) {
        for (int& x : d) x = -x;
      }
      break;
    }
  }
  return d;
}

Vec3d common_perp(const WaveVector& l1, const WaveVector& l2) {
  const IntVec3 d = integer_common_perp(l1, l2);
  const double n = std::sqrt(double(dot(d, d)));
  return {d[0] / n, d[1] / n, d[2] / n};
}

FieldQ WitnessExpression::evaluate() const {
  FieldQ acc;
  for (const auto& t : terms) acc += t.coefficient * bilinear_Q(t.left, t.right);
  return acc;
}

SumModeWitness witness_sum_mode(const WaveVector& l1, const WaveVector& l2) {
  const Vec3q d = to_vec<Rational>(integer_common_perp(l1, l2));
  const Vec3q pl = leray_project(to_vec<Rational>(l1.components()), l2);
  const Rational scale = dot(pl, l1);
  const Vec3q b = scaled(Rational(1 / scale), pl);

  const auto s = *sum(l1, l2);
  SumModeWitness w;
  w.cos_part.terms = {
      {Rational(1), FieldQ::single(Flavor::Cos, l1, d), FieldQ::single(Flavor::Sin, l2, b)},
      {Rational(1), FieldQ::single(Flavor::Cos, l2, b), FieldQ::single(Flavor::Sin, l1, d)},
  };
  w.cos_part.claimed = FieldQ::single(Flavor::Cos, s, d);
  w.sin_part.terms = {
      {Rational(1), FieldQ::single(Flavor::Sin, l1, d), FieldQ::single(Flavor::Sin, l2, b)},
      {Rational(-1), FieldQ::single(Flavor::Cos, l1, d), FieldQ::single(Flavor::Cos, l2, b)},
  };
  w.sin_part.claimed = FieldQ::single(Flavor::Sin, s, d);
  return w;
}

bool check_inclusion_chain(const ModeSet& k, int i, int j) {
  if (j < 1 || i < 0) throw std::invalid_argument("inclusion chain needs i >= 0, j >= 1");
  const RationalSubspace small = h_subspace(k.expansion(j), i);
  const RationalSubspace big = h_subspace(k.expansion(j - 1), i + 3);
  return big.contains_all(small);
}

}  // namespace torusctl
