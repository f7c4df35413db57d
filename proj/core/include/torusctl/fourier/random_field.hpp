#pragma once

#include <cmath>
#include <random>

#include "torusctl/fourier/polarization.hpp"
#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

// Random divergence-free field on the canonical modes with |l|_inf <= M.
// Each polarization coordinate is uniform on [-1, 1] scaled by |l|^-(k+2),
// then the whole field is rescaled so that its H^k norm equals `radius`.
template <class Rng>
FieldD random_field(int max_wavenumber, int k, double radius, Rng& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  FieldD::Map m;
  const int M = max_wavenumber;
  for (int i = 0; i <= M; ++i) {
    for (int j = -M; j <= M; ++j) {
      for (int l = -M; l <= M; ++l) {
        auto wv = WaveVector::try_make({i, j, l});
        if (!wv || !wv->is_canonical()) continue;
        const auto basis = polarization_basis(*wv);
        const double decay = std::pow(double(wv->norm2()), -0.5 * (k + 2));
        ModeCoeffs<double> c;
        for (auto* target : {&c.cos, &c.sin}) {
          const double x = uni(rng) * decay;
          const double y = uni(rng) * decay;
          for (int d = 0; d < 3; ++d) (*target)[d] = x * basis.l_plus[d] + y * basis.l_minus[d];
        }
        m[*wv] = c;
      }
    }
  }
  FieldD u = FieldD::from_normal_map(std::move(m));
  const double norm = sobolev_norm(u, k);
  if (norm > 0.0) u *= radius / norm;
  return u;
}

}  // namespace torusctl
