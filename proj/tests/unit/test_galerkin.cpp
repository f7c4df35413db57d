#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/random_field.hpp"
#include "torusctl/galerkin/integrator.hpp"
#include "torusctl/galerkin/stability.hpp"

using namespace torusctl;

namespace {

std::shared_ptr<const GalerkinSpace> space2() {
  static auto s = std::make_shared<const GalerkinSpace>(2);
  return s;
}

FieldD truncate(const FieldD& u, int M) {
  FieldD::Map m;
  for (const auto& [l, c] : u.modes())
    if (l.norm_inf() <= M) m[l] = c;
  return FieldD::from_normal_map(std::move(m));
}

// Smooth forcing g(t) = cos(t) F.
class CosineSource final : public ControlSource {
 public:
  explicit CosineSource(DenseField f) : f_(std::move(f)) {}
  void accumulate(double s, double, double coef, DenseField& out) const override {
    out += coef * std::cos(s) * f_;
  }
  std::vector<double> breakpoints() const override { return {}; }

 private:
  DenseField f_;
};

}  // namespace

TEST(GalerkinSpace, CountsModes) {
  EXPECT_EQ(GalerkinSpace(1).num_modes(), 13u);
  EXPECT_EQ(space2()->num_modes(), 62u);
  EXPECT_EQ(space2()->frame_dim(), 248u);
}

TEST(GalerkinSpace, DenseBMatchesSparseProjected) {
  std::mt19937_64 rng(1);
  const auto& sp = *space2();
  for (int trial = 0; trial < 5; ++trial) {
    const FieldD u = random_field(2, 3, 1.0, rng);
    const FieldD v = random_field(2, 3, 1.0, rng);
    const FieldD expected = truncate(bilinear_B(u, v), 2);
    const DenseField got = sp.B(sp.from_field(u), sp.from_field(v));
    EXPECT_LT((got - sp.from_field(expected)).norm(), 1e-14 * (1 + got.norm()));
    EXPECT_LT(sp.divergence_residual(got), 1e-13);
  }
}

TEST(GalerkinSpace, FrameIsIsometry) {
  std::mt19937_64 rng(2);
  const auto& sp = *space2();
  const DenseField u = sp.from_field(random_field(2, 0, 1.0, rng));
  const Eigen::VectorXd x = sp.to_frame(u);
  EXPECT_NEAR(x.norm(), u.norm(), 1e-14);
  EXPECT_LT((sp.from_frame(x) - u).norm(), 1e-14);
}

TEST(Integrator, HeatDecayWithNonlinearitySuppressed) {
  SimConfig cfg;
  cfg.nu = 1.0;
  cfg.T = 1.0;
  cfg.suppress_nonlinearity = true;
  const auto sp = space2();
  const DenseField u0 = sp->from_field(FieldD::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3d{0, 1, 0}));
  const Trajectory tr = solve_ns(sp, u0, cfg, {});
  EXPECT_DOUBLE_EQ(tr.end(), 1.0);
  EXPECT_LT((tr.final_state() - std::exp(-1.0) * u0).norm(), 1e-10);
}

TEST(Integrator, SingleEigenmodeDecaysExactly) {
  SimConfig cfg;
  cfg.nu = 0.1;
  cfg.T = 2.0;
  const auto sp = space2();
  const WaveVector l(1, 2, -1);
  const auto b = polarization_basis(l);
  const DenseField u0 = sp->from_field(FieldD::single(Flavor::Sin, l, b.l_plus));
  const Trajectory tr = solve_ns(sp, u0, cfg, {});
  for (std::size_t i = 0; i < tr.size(); i += 17) {
    const double expect = std::exp(-cfg.nu * 6.0 * tr.time(i));
    EXPECT_LT((tr.state(i) - expect * u0).norm(), 1e-10);
  }
}

TEST(Integrator, ZeroStaysZero) {
  SimConfig cfg;
  const auto sp = space2();
  const Trajectory tr = solve_ns(sp, sp->zero(), cfg, {});
  EXPECT_EQ(tr.final_state().norm(), 0.0);
}

TEST(Integrator, TruncatedEulerConservesEnergy) {
  SimConfig cfg;
  cfg.nu = 0.0;
  cfg.T = 1.0;
  std::mt19937_64 rng(3);
  const auto sp = space2();
  const DenseField u0 = sp->from_field(random_field(2, 3, 1.0, rng));
  const Trajectory tr = solve_ns(sp, u0, cfg, {});
  const double e0 = u0.squaredNorm();
  double worst = 0.0;
  for (const auto& s : tr.states()) worst = std::max(worst, std::abs(s.squaredNorm() - e0) / e0);
  EXPECT_LT(worst, 1e-8);
  EXPECT_GT((tr.final_state() - u0).norm(), 1e-3);  // the flow is not trivial
}

TEST(Integrator, DivergenceFreeAlongTrajectory) {
  SimConfig cfg;
  std::mt19937_64 rng(4);
  const auto sp = space2();
  const Trajectory tr = solve_ns(sp, sp->from_field(random_field(2, 3, 2.0, rng)), cfg, {});
  for (const auto& s : tr.states()) ASSERT_LT(sp->divergence_residual(s), 1e-12);
}

TEST(Integrator, FourthOrderSelfConvergence) {
  SimConfig cfg;
  cfg.nu = 0.1;
  cfg.T = 1.0;
  cfg.adaptive = false;
  std::mt19937_64 rng(5);
  const auto sp = space2();
  const DenseField u0 = sp->from_field(random_field(2, 3, 3.0, rng));
  ForcingSpec f;
  f.h = ControlSignal(sp, 0.0, 1.0);
  f.h.add(std::make_shared<CosineSource>(sp->from_field(random_field(2, 3, 2.0, rng))));
  auto endpoint = [&](double dt) {
    cfg.dt_max = dt;
    return solve_ns(sp, u0, cfg, f).final_state();
  };
  const DenseField a = endpoint(0.1), b = endpoint(0.05), c = endpoint(0.025);
  const double ratio = (a - b).norm() / (b - c).norm();
  EXPECT_GT(ratio, 16 * 0.7);
  EXPECT_LT(ratio, 16 * 1.4);
}

TEST(Integrator, BlowUpGuard) {
  SimConfig cfg;
  cfg.blowup_threshold = 1.0;
  const auto sp = space2();
  const DenseField u0 = sp->from_field(FieldD::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3d{0, 1, 0}));
  ForcingSpec f;
  f.h = ControlSignal(sp, 0.0, 1.0);
  std::vector<DenseField> vals{u0 * 100.0};
  f.h.add(std::make_shared<PiecewiseConstantSource>(std::vector<double>{0.0, 1.0}, vals));
  try {
    solve_ns(sp, u0, cfg, f);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_GE(e.last_valid_time(), 0.0);
    EXPECT_LT(e.last_valid_time(), 0.1);
  }
}

TEST(Integrator, StepsLandOnBreakpointsAndSamples) {
  SimConfig cfg;
  const auto sp = space2();
  ForcingSpec f;
  f.eta = ControlSignal(sp, 0.0, 1.0);
  std::vector<DenseField> vals{sp->zero(), sp->zero()};
  f.eta.add(std::make_shared<PiecewiseConstantSource>(std::vector<double>{0.0, 0.3337, 1.0}, vals));
  SolveOptions opt;
  opt.sample_times = {0.123456};
  opt.record_every = 1000000;
  const Trajectory tr = solve_ns(sp, sp->zero(), cfg, f, opt);
  ASSERT_EQ(tr.size(), 4u);
  EXPECT_DOUBLE_EQ(tr.time(1), 0.123456);
  EXPECT_DOUBLE_EQ(tr.time(2), 0.3337);
  EXPECT_DOUBLE_EQ(tr.time(3), 1.0);
}

TEST(Integrator, RejectsUncoveredForcing) {
  SimConfig cfg;
  const auto sp = space2();
  ForcingSpec f;
  f.h = ControlSignal(sp, 0.0, 0.5);
  f.h.add(std::make_shared<PiecewiseConstantSource>(std::vector<double>{0.0, 0.5}, std::vector<DenseField>{sp->zero()}));
  EXPECT_THROW(solve_ns(sp, sp->zero(), cfg, f), HorizonMismatch);
}

TEST(LinearisedEuler, ZeroReferenceKeepsState) {
  SimConfig cfg;
  std::mt19937_64 rng(6);
  const auto sp = space2();
  const DenseField v0 = sp->from_field(random_field(2, 3, 1.0, rng));
  const ConstantPath w(sp->zero(), 0.0, 1.0);
  const Trajectory tr = solve_linearised_euler(sp, v0, w, ControlSignal{}, cfg);
  EXPECT_LT((tr.final_state() - v0).norm(), 1e-15);
}

TEST(LinearisedEuler, LinearInInitialStateAndControl) {
  SimConfig cfg;
  std::mt19937_64 rng(7);
  const auto sp = space2();
  const ConstantPath w(sp->from_field(random_field(1, 3, 2.0, rng)), 0.0, 1.0);
  auto control = [&](const DenseField& f) {
    ControlSignal g(sp, 0.0, 1.0);
    g.add(std::make_shared<CosineSource>(f));
    return g;
  };
  const DenseField v1 = sp->from_field(random_field(2, 3, 1.0, rng));
  const DenseField v2 = sp->from_field(random_field(2, 3, 1.0, rng));
  const DenseField f1 = sp->from_field(random_field(2, 3, 1.0, rng));
  const DenseField f2 = sp->from_field(random_field(2, 3, 1.0, rng));
  const auto end = [&](const DenseField& v, const DenseField& f) {
    return solve_linearised_euler(sp, v, w, control(f), cfg).final_state();
  };
  const DenseField a = end(v1, f1), b = end(v2, f2);
  EXPECT_LT((end(2.5 * v1, 2.5 * f1) - 2.5 * a).norm(), 1e-10 * a.norm());
  EXPECT_LT((end(v1 + v2, f1 + f2) - a - b).norm(), 1e-10 * (a.norm() + b.norm()));
}

TEST(LinearisedEuler, HorizonMismatch) {
  SimConfig cfg;
  const auto sp = space2();
  const ConstantPath w(sp->zero(), 0.0, 0.5);
  EXPECT_THROW(solve_linearised_euler(sp, sp->zero(), w, ControlSignal{}, cfg), HorizonMismatch);
}

TEST(Remainder, VanishesOnSyntheticAnsatz) {
  const auto sp = space2();
  std::mt19937_64 rng(8);
  const DenseField a = sp->from_field(random_field(2, 3, 1.0, rng));
  const DenseField b = sp->from_field(random_field(2, 3, 1.0, rng));
  const double delta = 0.1;
  Trajectory v(sp), w(sp), u(sp);
  for (int i = 0; i <= 10; ++i) {
    const double s = 0.1 * i;
    v.push(s, (1 + s) * a);
    w.push(s, s * (1 - s) * b);
    u.push(s * delta, (1 + s) * a + s * (1 - s) * b / delta);
  }
  const auto r = remainder_diagnostic(u, v, w, delta, 3);
  for (const auto& [t, x] : r) EXPECT_LT(x, 1e-12);
  EXPECT_EQ(r.front().second, 0.0);
}

TEST(Trajectory, InterpolatesLinearly) {
  const auto sp = space2();
  Trajectory tr(sp);
  DenseField a = sp->zero();
  a[0] = 1.0;
  tr.push(0.0, sp->zero());
  tr.push(2.0, a);
  EXPECT_DOUBLE_EQ(tr.interpolate(0.5)[0], 0.25);
  EXPECT_THROW(tr.interpolate(3.0), HorizonMismatch);
  EXPECT_THROW(tr.push(1.0, a), std::invalid_argument);
}

TEST(Stability, LinearCaseGivesSizeIndependentRatios) {
  std::mt19937_64 rng(3);
  const DenseField u0 = space2()->from_field(random_field(2, 3, 0.5, rng));
  SimConfig cfg;
  cfg.suppress_nonlinearity = true;
  StabilityOptions opt;
  opt.perturbations = 3;
  const StabilityReport rep = probe_stability(space2(), u0, ForcingSpec{}, cfg, opt);
  ASSERT_EQ(rep.ratios.size(), 3u);
  for (const auto& row : rep.ratios) {
    ASSERT_EQ(row.size(), 3u);
    EXPECT_NEAR(row[1], row[0], 1e-7 * row[0]);
    EXPECT_NEAR(row[2], row[0], 1e-7 * row[0]);
  }
}

TEST(Stability, RatiosBoundedAcrossHalvings) {
  std::mt19937_64 rng(4);
  const DenseField u0 = space2()->from_field(random_field(2, 3, 0.5, rng));
  const StabilityReport rep = probe_stability(space2(), u0, ForcingSpec{}, SimConfig{});
  EXPECT_EQ(rep.ratios.size(), 20u);
  EXPECT_LT(rep.max_variation(), 2.0);
  EXPECT_TRUE(std::isfinite(rep.max_ratio()));
  EXPECT_GT(rep.max_ratio(), 0.0);
}
