#include "torusctl/galerkin/stability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "torusctl/fourier/random_field.hpp"

namespace torusctl {

double StabilityReport::max_ratio() const {
  double m = 0.0;
  for (const auto& row : ratios)
    for (double r : row) m = std::max(m, r);
  return m;
}

double StabilityReport::max_variation() const {
  double v = 1.0;
  for (const auto& row : ratios) {
    if (row.empty()) continue;
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    v = std::max(v, *lo > 0.0 ? *hi / *lo : INFINITY);
  }
  return v;
}

StabilityReport probe_stability(std::shared_ptr<const GalerkinSpace> space, const DenseField& u0,
                                const ForcingSpec& forcing, SimConfig cfg, const StabilityOptions& opt) {
  cfg.adaptive = false;
  const GalerkinSpace& sp = *space;
  const Trajectory base = solve_ns(space, u0, cfg, forcing);

  StabilityReport rep;
  rep.sizes = opt.sizes;
  std::mt19937_64 rng(opt.seed);
  for (int p = 0; p < opt.perturbations; ++p) {
    const DenseField du = sp.from_field(random_field(sp.cutoff(), cfg.k, 1.0, rng));
    const DenseField df = sp.from_field(random_field(sp.cutoff(), std::max(cfg.k - 1, 0), 1.0, rng));
    const auto source = std::make_shared<PiecewiseConstantSource>(std::vector<double>{0.0, cfg.T},
                                                                  std::vector<DenseField>{df});
    const double input = sp.sobolev_norm(du, cfg.k) + std::sqrt(cfg.T) * sp.sobolev_norm(df, std::max(cfg.k - 1, 0));

    std::vector<double> row;
    for (double s : opt.sizes) {
      ForcingSpec f = forcing;
      ControlSignal extra(space, 0.0, cfg.T);
      extra.add(source, s);
      f.h = f.h.empty() ? extra : f.h + extra;
      const Trajectory pert = solve_ns(space, u0 + s * du, cfg, f);
      double gap = 0.0;
      const std::size_t n = std::min(base.size(), pert.size());
      for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, sp.sobolev_norm(pert.state(i) - base.state(i), cfg.k));
      row.push_back(gap / (s * input));
    }
    rep.ratios.push_back(std::move(row));
  }
  return rep;
}

}  // namespace torusctl
