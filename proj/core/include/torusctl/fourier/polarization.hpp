#pragma once

#include <utility>

#include "torusctl/fourier/vec3.hpp"
#include "torusctl/fourier/wave_vector.hpp"

namespace torusctl {

// Orthonormal pair spanning l^perp. Both members of a +-l pair share the
// basis of their canonical representative.
struct PolarizationBasis {
  WaveVector wavevector;  // canonical representative
  Vec3d l_plus;
  Vec3d l_minus;
};

// l_plus = normalize(e x l), e the first of (0,0,1), (0,1,0) not parallel to
// l; l_minus = normalize(l x l_plus).
PolarizationBasis polarization_basis(const WaveVector& l);

// The unnormalized integer vectors behind polarization_basis. They span the
// same hyperplane and keep rational computations inside Q.
std::pair<IntVec3, IntVec3> integer_polarization(const WaveVector& l);

// Direction l(l) attached to a signed wave vector: l_plus for the canonical
// member of the pair, l_minus for the other.
Vec3d signed_polarization(const WaveVector& l);
IntVec3 signed_integer_polarization(const WaveVector& l);

}  // namespace torusctl
