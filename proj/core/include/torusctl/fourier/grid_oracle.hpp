#pragma once

#include "torusctl/fourier/trig_field.hpp"

namespace torusctl {

// Smallest grid size for which q_oracle(v, w, N) is alias-free.
int oracle_min_grid(const FieldD& v, const FieldD& w);

// Independent evaluation of Q(v,w): (v . grad) w + (w . grad) v is sampled
// pointwise on a uniform N^3 grid, transformed back by a direct DFT and
// Leray-projected mode by mode. Test oracle only.
//
// Throws AliasingError if grid_size < oracle_min_grid(v, w).
FieldD q_oracle(const FieldD& v, const FieldD& w, int grid_size);

// Same evaluation for B(u,v) = Pi((u . grad) v) alone.
FieldD b_oracle(const FieldD& u, const FieldD& v, int grid_size);

}  // namespace torusctl
