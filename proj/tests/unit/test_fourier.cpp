#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/field_io.hpp"
#include "torusctl/fourier/grid_oracle.hpp"
#include "torusctl/fourier/polarization.hpp"
#include "torusctl/fourier/random_field.hpp"

using namespace torusctl;

namespace {

std::vector<WaveVector> box(int m, bool canonical_only) {
  std::vector<WaveVector> out;
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j)
      for (int k = -m; k <= m; ++k) {
        auto l = WaveVector::try_make({i, j, k});
        if (l && (!canonical_only || l->is_canonical())) out.push_back(*l);
      }
  return out;
}

double rel_diff(const FieldD& a, const FieldD& b) {
  const double scale = std::max(sobolev_norm(a, 0), sobolev_norm(b, 0));
  const double d = sobolev_norm(a - b, 0);
  return scale == 0.0 ? d : d / scale;
}

FieldD random_single_mode(std::mt19937_64& rng, int m, Flavor f) {
  std::uniform_int_distribution<int> comp(-m, m);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::optional<WaveVector> l;
  while (!l) l = WaveVector::try_make({comp(rng), comp(rng), comp(rng)});
  const auto basis = polarization_basis(*l);
  const double x = uni(rng), y = uni(rng);
  Vec3d a;
  for (int i = 0; i < 3; ++i) a[i] = x * basis.l_plus[i] + y * basis.l_minus[i];
  return FieldD::single(f, *l, a);
}

}  // namespace

TEST(WaveVector, RejectsZero) {
  EXPECT_THROW(WaveVector(0, 0, 0), InvalidWaveVector);
  EXPECT_FALSE(WaveVector::try_make({0, 0, 0}).has_value());
}

TEST(WaveVector, ExactlyOneOfPairIsCanonical) {
  for (const auto& l : box(2, false)) {
    EXPECT_NE(l.is_canonical(), (-l).is_canonical()) << l;
    EXPECT_TRUE(l.canonical().is_canonical());
  }
}

TEST(Polarization, AxisCase) {
  const auto b = polarization_basis(WaveVector(0, 0, 1));
  EXPECT_EQ(b.l_plus, (Vec3d{1, 0, 0}));
  EXPECT_EQ(b.l_minus, (Vec3d{0, 1, 0}));
}

TEST(Polarization, OrthonormalInHyperplane) {
  for (const auto& l : box(3, false)) {
    const auto b = polarization_basis(l);
    EXPECT_NEAR(dot(b.l_plus, l), 0.0, 1e-15);
    EXPECT_NEAR(dot(b.l_minus, l), 0.0, 1e-15);
    EXPECT_NEAR(dot(b.l_plus, b.l_minus), 0.0, 1e-15);
    EXPECT_NEAR(dot(b.l_plus, b.l_plus), 1.0, 1e-15);
    EXPECT_NEAR(dot(b.l_minus, b.l_minus), 1.0, 1e-15);
    EXPECT_EQ(b.wavevector, l.canonical());
  }
}

TEST(Polarization, MinusSharesCanonicalBasis) {
  const WaveVector l(1, 2, 2);
  const auto p = polarization_basis(l);
  const auto m = polarization_basis(-l);
  EXPECT_EQ(p.l_plus, m.l_plus);
  EXPECT_EQ(p.l_minus, m.l_minus);
}

TEST(Leray, Examples) {
  EXPECT_EQ(leray_project(Vec3q{1, 0, 0}, WaveVector(0, 0, 1)), (Vec3q{1, 0, 0}));
  EXPECT_EQ(leray_project(Vec3q{0, 0, 1}, WaveVector(0, 0, 1)), (Vec3q{0, 0, 0}));
  EXPECT_EQ(leray_project(Vec3q{1, 1, 0}, WaveVector(1, 1, 0)), (Vec3q{0, 0, 0}));
  EXPECT_EQ(leray_project(Vec3q{1, -1, 3}, WaveVector(1, 1, 0)), (Vec3q{1, -1, 3}));
}

TEST(Leray, ProjectionResidualIsParallel) {
  const WaveVector l(1, 2, -3);
  const Vec3q a{Rational(2, 3), -5, 7};
  const Vec3q p = leray_project(a, l);
  EXPECT_EQ(dot(p, l), 0);
  const Vec3q r = a - p;
  // r is a multiple of l: cross product vanishes
  EXPECT_EQ(r[0] * l[1] - r[1] * l[0], 0);
  EXPECT_EQ(r[1] * l[2] - r[2] * l[1], 0);
}

TEST(TrigField, FoldsNonCanonicalModes) {
  const WaveVector l(1, 0, 0);
  FieldQ u;
  u.add_term(Flavor::Cos, -l, Vec3q{0, 1, 0});
  u.add_term(Flavor::Sin, -l, Vec3q{0, 0, 1});
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u.find(l)->cos, (Vec3q{0, 1, 0}));
  EXPECT_EQ(u.find(l)->sin, (Vec3q{0, 0, -1}));
}

TEST(TrigField, RejectsDivergentCoefficient) {
  FieldQ u;
  EXPECT_THROW(u.add_term(Flavor::Cos, WaveVector(1, 0, 0), Vec3q{1, 0, 0}), DivergenceViolation);
  FieldD v;
  EXPECT_THROW(v.add_term(Flavor::Sin, WaveVector(1, 1, 0), Vec3d{1, 0, 0}), DivergenceViolation);
  EXPECT_NO_THROW(v.add_term(Flavor::Sin, WaveVector(1, 1, 0), Vec3d{1, -1 + 1e-14, 0}));
}

TEST(TrigField, CancellationLeavesEmptyNormalForm) {
  FieldQ u = FieldQ::single(Flavor::Cos, WaveVector(0, 1, 0), Vec3q{1, 0, 2});
  FieldQ v = u;
  EXPECT_TRUE((u - v).empty());
  EXPECT_EQ(u + u, Rational(2) * u);
}

TEST(TrigField, FloatPruningDropsTinyPairs) {
  FieldD u = FieldD::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3d{0, 1, 0});
  u += FieldD::single(Flavor::Cos, WaveVector(0, 1, 0), Vec3d{1e-16, 0, 0});
  EXPECT_EQ(u.size(), 1u);
}

TEST(Stokes, Eigenrelation) {
  for (const auto& l : box(8, true)) {
    const auto [p, m] = integer_polarization(l);
    const FieldQ c = FieldQ::single(Flavor::Cos, l, to_vec<Rational>(p));
    const FieldQ s = FieldQ::single(Flavor::Sin, l, to_vec<Rational>(m));
    ASSERT_EQ(stokes_apply(c), Rational(l.norm2()) * c);
    ASSERT_EQ(stokes_apply(s), Rational(l.norm2()) * s);
  }
  EXPECT_TRUE(stokes_apply(FieldQ{}).empty());
}

TEST(Sobolev, UnitWaveNormIndependentOfOrder) {
  const FieldD u = FieldD::single(Flavor::Cos, WaveVector(0, 0, 1), Vec3d{0.6, 0.8, 0});
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(sobolev_norm(u, k), 1.0, 1e-15);
  EXPECT_EQ(sobolev_norm(FieldD{}, 3), 0.0);
}

TEST(Sobolev, MonotoneInOrder) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const FieldD u = random_field(3, 3, 1.0, rng);
    EXPECT_GE(sobolev_norm(u, 3), sobolev_norm(u, 0));
    EXPECT_NEAR(sobolev_norm(u, 0) * sobolev_norm(u, 0), l2_inner(u, u), 1e-14);
  }
}

TEST(Bilinear, SelfConvectionOfSingleModeVanishes) {
  for (const auto& l : box(2, true)) {
    const auto [p, m] = integer_polarization(l);
    FieldQ u;
    u.add_mode(l, to_vec<Rational>(p), to_vec<Rational>(m));
    const FieldQ c = FieldQ::single(Flavor::Cos, l, to_vec<Rational>(p));
    EXPECT_TRUE(bilinear_B(c).empty()) << l;
    // with both cos and sin present, B(u) reduces to the zero mode as well
    EXPECT_TRUE(bilinear_B(u).empty()) << l;
  }
}

TEST(Bilinear, BMatchesGridOracle) {
  const FieldD u = FieldD::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3d{0, 1, 0});
  const FieldD v = FieldD::single(Flavor::Sin, WaveVector(0, 1, 0), Vec3d{1, 0, 0});
  const FieldD b = bilinear_B(u, v);
  EXPECT_FALSE(b.empty());
  EXPECT_LT(rel_diff(b, b_oracle(u, v, oracle_min_grid(u, v))), 1e-12);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const FieldD x = random_field(2, 1, 1.0, rng);
    const FieldD y = random_field(2, 1, 1.0, rng);
    EXPECT_LT(rel_diff(bilinear_B(x, y), b_oracle(x, y, oracle_min_grid(x, y))), 1e-12);
  }
}

TEST(Bilinear, SkewSymmetry) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldD u = random_field(2, 3, 1.0, rng);
    const FieldD v = random_field(2, 3, 1.0, rng);
    const double lhs = std::fabs(l2_inner(bilinear_B(u, v), v));
    const double bound = 1e-11 * sobolev_norm(u, 1) * sobolev_norm(v, 0) * sobolev_norm(v, 1);
    EXPECT_LE(lhs, bound);
  }
}

TEST(Bilinear, SkewSymmetryExact) {
  const WaveVector l1(1, 0, 0), l2(0, 1, 1), l3(1, -1, 0);
  FieldQ u = FieldQ::single(Flavor::Cos, l1, Vec3q{0, 1, 2});
  u.add_term(Flavor::Sin, l2, Vec3q{3, 1, -1});
  FieldQ v = FieldQ::single(Flavor::Sin, l3, Vec3q{1, 1, 5});
  v.add_term(Flavor::Cos, l2, Vec3q{1, Rational(1, 2), Rational(-1, 2)});
  v.add_term(Flavor::Cos, WaveVector(1, 1, 1), Vec3q{1, -2, 1});
  EXPECT_EQ(l2_inner(bilinear_B(u, v), v), 0);
}

TEST(Bilinear, QIsSymmetricSumOfB) {
  std::mt19937_64 rng(5);
  const FieldD u = random_field(2, 3, 1.0, rng);
  const FieldD v = random_field(2, 3, 1.0, rng);
  EXPECT_LT(rel_diff(bilinear_Q(u, v), bilinear_B(u, v) + bilinear_B(v, u)), 1e-14);
  EXPECT_LT(rel_diff(bilinear_Q(u, v), bilinear_Q(v, u)), 1e-14);
}

TEST(Bilinear, SameWaveCosSinVanishesWithEqualCoefficient) {
  const WaveVector l(1, 2, 2);
  const auto [p, m] = integer_polarization(l);
  const Vec3q a = to_vec<Rational>(p);
  EXPECT_TRUE(bilinear_Q(FieldQ::single(Flavor::Cos, l, a), FieldQ::single(Flavor::Sin, l, a)).empty());
}

TEST(Bilinear, ClosedFormMatchesProductExpansionExactly) {
  const auto modes = box(1, false);
  for (const auto& l1 : modes) {
    for (const auto& l2 : modes) {
      const auto [p1, m1] = integer_polarization(l1);
      const auto [p2, m2] = integer_polarization(l2);
      for (const IntVec3& ai : {p1, m1}) {
        for (const IntVec3& bi : {p2, m2}) {
          const Vec3q a = to_vec<Rational>(ai), b = to_vec<Rational>(bi);
          for (Flavor f1 : {Flavor::Cos, Flavor::Sin}) {
            for (Flavor f2 : {Flavor::Cos, Flavor::Sin}) {
              const FieldQ lhs = bilinear_Q(FieldQ::single(f1, l1, a), FieldQ::single(f2, l2, b));
              ASSERT_EQ(lhs, q_closed_form(f1, l1, a, f2, l2, b)) << l1 << " " << l2;
            }
          }
        }
      }
    }
  }
}

TEST(Bilinear, CosSinClosedFormExample) {
  // l1 = e1, l2 = e3, a = e3, b = e1: <a,l2> = <b,l1> = 1, so
  // d = (1,0,-1) and s = (1,0,1) are parallel to l1 - l2 and l1 + l2 and
  // both projections vanish.
  const Vec3q a{0, 0, 1}, b{1, 0, 0};
  const FieldQ q = bilinear_Q(FieldQ::single(Flavor::Cos, WaveVector(1, 0, 0), a),
                              FieldQ::single(Flavor::Sin, WaveVector(0, 0, 1), b));
  EXPECT_TRUE(q.empty());
  // a = e2: <a,l2> = 0, <b,l1> = 1, d = -a, s = a, both already projected.
  const FieldQ q2 = bilinear_Q(FieldQ::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3q{0, 1, 0}),
                               FieldQ::single(Flavor::Sin, WaveVector(0, 0, 1), b));
  FieldQ expected;
  expected.add_term(Flavor::Cos, WaveVector(1, 0, -1), Vec3q{0, Rational(-1, 2), 0});
  expected.add_term(Flavor::Cos, WaveVector(1, 0, 1), Vec3q{0, Rational(1, 2), 0});
  EXPECT_EQ(q2, expected);
}

TEST(Bilinear, ClosedFormMutationIsDetected) {
  const WaveVector l1(1, 0, 0), l2(0, 1, 0);
  const Vec3q a{0, 0, 1}, b{1, 0, 1};
  ClosedFormOptions flip;
  flip.flip_cos_cos_sign = true;
  const FieldQ good = bilinear_Q(FieldQ::single(Flavor::Cos, l1, a), FieldQ::single(Flavor::Cos, l2, b));
  EXPECT_NE(good, q_closed_form(Flavor::Cos, l1, a, Flavor::Cos, l2, b, flip));
}

TEST(Bilinear, QMatchesGridOracleOnRandomPairs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> flav(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const FieldD v = random_single_mode(rng, 4, flav(rng) ? Flavor::Cos : Flavor::Sin);
    const FieldD w = random_single_mode(rng, 4, flav(rng) ? Flavor::Cos : Flavor::Sin);
    const FieldD q = bilinear_Q(v, w);
    const FieldD o = q_oracle(v, w, oracle_min_grid(v, w));
    const double scale = sobolev_norm(v, 1) * sobolev_norm(w, 0) + sobolev_norm(v, 0) * sobolev_norm(w, 1);
    EXPECT_LT(sobolev_norm(q - o, 0), 1e-10 * scale);
  }
}

TEST(Bilinear, SupportBound) {
  std::mt19937_64 rng(9);
  const FieldD u = random_single_mode(rng, 3, Flavor::Cos) + random_single_mode(rng, 3, Flavor::Sin);
  const FieldD v = random_single_mode(rng, 3, Flavor::Sin);
  std::set<WaveVector> allowed;
  for (const auto& [p, c] : u.modes())
    for (const auto& [q, d] : v.modes()) {
      if (auto s = sum(p, q)) allowed.insert(s->canonical());
      if (auto s = difference(p, q)) allowed.insert(s->canonical());
    }
  const FieldD q = bilinear_Q(u, v);
  EXPECT_FALSE(q.empty());
  for (const auto& [l, c] : q.modes()) EXPECT_TRUE(allowed.count(l)) << l;
}

TEST(Oracle, TrivialCases) {
  const FieldD c = FieldD::single(Flavor::Cos, WaveVector(1, 2, 0), Vec3d{2, -1, 0});
  EXPECT_LT(sobolev_norm(q_oracle(c, c, oracle_min_grid(c, c)), 0), 1e-13);
  EXPECT_TRUE(q_oracle(FieldD{}, c, 8).empty());
  EXPECT_THROW(q_oracle(c, c, 4), AliasingError);
}

TEST(FieldIo, RoundTripRational) {
  FieldQ u = FieldQ::single(Flavor::Cos, WaveVector(1, -2, 0), Vec3q{2, 1, Rational(3, 7)});
  u.add_term(Flavor::Sin, WaveVector(-1, 0, 0), Vec3q{0, Rational(-5, 3), 1});
  const std::string text = format_field(u);
  EXPECT_NE(text.find("3/7"), std::string::npos);
  EXPECT_NE(text.find("2/1"), std::string::npos);
  EXPECT_EQ(parse_field<Rational>(text), u);
}

TEST(FieldIo, RoundTripDoubleIsExact) {
  std::mt19937_64 rng(1);
  const FieldD u = random_field(2, 3, 0.7, rng);
  EXPECT_EQ(parse_field<double>(format_field(u)), u);
}

TEST(FieldIo, RejectsMalformedLines) {
  EXPECT_THROW(parse_field<double>("1 0 0  0 1 0  0 0"), ParseError);
  EXPECT_THROW(parse_field<double>("1 0 0  1 0 0  0 0 0"), ParseError);
  EXPECT_THROW(parse_field<Rational>("1 0 0  0 x 0  0 0 0"), ParseError);
  EXPECT_TRUE(parse_field<double>("# comment only\n\n").empty());
}
