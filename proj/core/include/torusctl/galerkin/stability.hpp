#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "torusctl/galerkin/integrator.hpp"

namespace torusctl {

struct StabilityOptions {
  int perturbations = 20;
  // Perturbation sizes, each half the previous one by default.
  std::vector<double> sizes{1e-3, 5e-4, 2.5e-4};
  std::uint64_t seed = 11;
};

// Empirical Lipschitz ratios of the resolving map (u0, f) -> u on [0, T]:
//   sup_t ||u(t) - u'(t)||_k / (||u0 - u0'||_k + ||f - f'||_{L2(0,T; H^{k-1})}).
// Each perturbation is a random direction (du0, df) with df constant in time,
// scaled by every entry of `sizes`.
struct StabilityReport {
  std::vector<double> sizes;
  std::vector<std::vector<double>> ratios;  // [perturbation][size]

  double max_ratio() const;
  // Largest max/min ratio of one perturbation across the sizes.
  double max_variation() const;
};

// Both runs use a fixed step grid (cfg.adaptive is ignored) so the states
// are compared at identical instants.
StabilityReport probe_stability(std::shared_ptr<const GalerkinSpace> space, const DenseField& u0,
                                const ForcingSpec& forcing, SimConfig cfg, const StabilityOptions& opt = {});

}  // namespace torusctl
