#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <queue>
#include <random>
#include <sstream>

#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/saturation/lattice.hpp"
#include "torusctl/saturation/saturation.hpp"
#include "torusctl/saturation/witness.hpp"

using namespace torusctl;

namespace {

ModeSet sym(std::initializer_list<IntVec3> vs) {
  std::vector<WaveVector> w;
  for (const auto& v : vs) w.emplace_back(v);
  return ModeSet::symmetrized(w);
}

// Breadth-first search over integer combinations inside a box; decides
// whether e1, e2, e3 are reachable using steps from K.
bool brute_force_generator(const ModeSet& k, int radius = 20) {
  const int side = 2 * radius + 1;
  auto idx = [&](int a, int b, int c) { return ((a + radius) * side + (b + radius)) * side + (c + radius); };
  std::vector<char> seen(std::size_t(side) * side * side, 0);
  std::queue<IntVec3> q;
  q.push({0, 0, 0});
  seen[idx(0, 0, 0)] = 1;
  while (!q.empty()) {
    const IntVec3 p = q.front();
    q.pop();
    for (const auto& l : k.vectors()) {
      IntVec3 n{p[0] + l[0], p[1] + l[1], p[2] + l[2]};
      if (std::abs(n[0]) > radius || std::abs(n[1]) > radius || std::abs(n[2]) > radius) continue;
      if (seen[idx(n[0], n[1], n[2])]) continue;
      seen[idx(n[0], n[1], n[2])] = 1;
      q.push(n);
    }
  }
  return seen[idx(1, 0, 0)] && seen[idx(0, 1, 0)] && seen[idx(0, 0, 1)];
}

}  // namespace

TEST(ModeSet, RejectsAsymmetricInput) {
  EXPECT_THROW(ModeSet({WaveVector(1, 0, 0)}), NonSymmetricModeSet);
  bool completed = false;
  const ModeSet k = ModeSet::symmetrized({WaveVector(1, 0, 0)}, &completed);
  EXPECT_TRUE(completed);
  EXPECT_EQ(k.size(), 2u);
}

TEST(ModeSet, ReadsFileAndCompletesSymmetry) {
  std::istringstream is("# axes\n1 0 0\n0 1 0\n0 0 1\n-1 0 0\n");
  bool completed = false;
  const ModeSet k = read_mode_set(is, &completed);
  EXPECT_TRUE(completed);
  EXPECT_EQ(k, ModeSet::unit_axes());
  std::istringstream again(format_mode_set(k));
  EXPECT_EQ(read_mode_set(again), k);
}

TEST(ModeSet, ExpansionAddsNonParallelSums) {
  const ModeSet k1 = ModeSet::unit_axes().expansion(1);
  EXPECT_EQ(k1.size(), 18u);
  EXPECT_TRUE(k1.contains(WaveVector(1, -1, 0)));
  EXPECT_FALSE(k1.contains(WaveVector(2, 0, 0)));
}

TEST(Lattice, Examples) {
  EXPECT_TRUE(is_generator(ModeSet::unit_axes()));
  EXPECT_FALSE(is_generator(sym({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})));
  const ModeSet fcc = sym({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  EXPECT_FALSE(is_generator(fcc));
  EXPECT_EQ(IntegerLattice(fcc).index(), 2);
  EXPECT_FALSE(brute_force_generator(fcc));
  EXPECT_FALSE(is_generator(ModeSet{}));
  EXPECT_TRUE(is_generator(sym({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}})));
}

TEST(Lattice, HermiteFormMembership) {
  const IntegerLattice lat(std::vector<IntVec3>{{2, 0, 0}, {0, 3, 0}, {1, 1, 1}});
  EXPECT_EQ(lat.rank(), 3);
  EXPECT_EQ(lat.index(), 6);
  EXPECT_TRUE(lat.contains({1, 1, 1}));
  EXPECT_TRUE(lat.contains({3, 4, 1}));
  EXPECT_FALSE(lat.contains({1, 0, 0}));
}

TEST(Lattice, MatchesBruteForceOnRandomSets) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> comp(-3, 3), count(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<WaveVector> vs;
    const int n = count(rng);
    while (int(vs.size()) < n) {
      if (auto l = WaveVector::try_make({comp(rng), comp(rng), comp(rng)})) vs.push_back(*l);
    }
    const ModeSet k = ModeSet::symmetrized(vs);
    EXPECT_EQ(is_generator(k), brute_force_generator(k)) << format_mode_set(k);
  }
}

TEST(Coordinates, RoundTrip) {
  FieldQ u = FieldQ::single(Flavor::Cos, WaveVector(1, -2, 3), Vec3q{1, 2, 1});
  u.add_term(Flavor::Sin, WaveVector(0, 2, -1), Vec3q{5, 1, 2});
  u.add_term(Flavor::Sin, WaveVector(0, 0, 1), Vec3q{Rational(1, 3), 1, 0});
  EXPECT_EQ(ModeCoordinates::decode_field(ModeCoordinates::encode(u)), u);
  const auto col = ModeCoordinates::decode(ModeCoordinates::column(WaveVector(-3, 0, 7), Flavor::Sin, 1));
  EXPECT_EQ(col.wavevector, WaveVector(-3, 0, 7));
  EXPECT_EQ(col.flavor, Flavor::Sin);
  EXPECT_EQ(col.slot, 1);
}

TEST(Coordinates, HigherWavenumbersComeFirst) {
  EXPECT_LT(ModeCoordinates::column(WaveVector(2, 0, 0), Flavor::Sin, 1),
            ModeCoordinates::column(WaveVector(1, 1, 1), Flavor::Cos, 0));
}

TEST(RationalSubspace, RankMembershipAndWindow) {
  RationalSubspace h;
  const FieldQ a = FieldQ::single(Flavor::Cos, WaveVector(1, 0, 0), Vec3q{0, 1, 0});
  const FieldQ b = FieldQ::single(Flavor::Cos, WaveVector(2, 0, 0), Vec3q{0, 0, 1});
  EXPECT_TRUE(h.insert(a + b));
  EXPECT_TRUE(h.insert(b));
  EXPECT_FALSE(h.insert(Rational(3) * a));
  EXPECT_EQ(h.rank(), 2u);
  EXPECT_TRUE(h.contains(a));
  EXPECT_EQ(h.dim_within(1), 1u);
  EXPECT_EQ(h.dim_within(2), 2u);
  EXPECT_EQ(h.max_wavenumber(), 2);
}

TEST(RationalSubspace, CanonicalFormIsOrderIndependent) {
  std::vector<FieldQ> gens = h0_generators(ModeSet::unit_axes());
  gens.push_back(gens[0] + gens[5]);
  RationalSubspace x, y;
  for (const auto& g : gens) x.insert(g);
  std::reverse(gens.begin(), gens.end());
  for (const auto& g : gens) y.insert(Rational(2) * g + gens.front());
  EXPECT_EQ(x, y);
}

TEST(Saturation, H0Dimensions) {
  EXPECT_EQ(h0_subspace(ModeSet::unit_axes()).rank(), 12u);
  EXPECT_EQ(h0_subspace(sym({{1, 0, 0}})).rank(), 4u);
  EXPECT_EQ(h0_subspace(ModeSet{}).rank(), 0u);
}

TEST(Saturation, H1OfAxesLiesInBallOfRadiusTwo) {
  const RationalSubspace h0 = h0_subspace(ModeSet::unit_axes());
  const RationalSubspace h1 = next_subspace(h0, h0);
  EXPECT_LE(h1.max_norm2(), 4);
  EXPECT_TRUE(h1.contains_all(h0));
  EXPECT_GT(h1.rank(), h0.rank());
  EXPECT_TRUE(next_subspace(RationalSubspace{}, h0).rank() == 0);
}

TEST(Saturation, ChainMatchesGenericRecursion) {
  const ModeSet k = ModeSet::unit_axes();
  const RationalSubspace h0 = h0_subspace(k);
  RationalSubspace h = h0;
  SaturationChain chain(k);
  for (int i = 1; i <= 3; ++i) {
    const RationalSubspace next = next_subspace(h, h0);
    EXPECT_TRUE(next.contains_all(h));
    h = next;
    chain.advance();
    EXPECT_EQ(chain.snapshot(), h) << "level " << i;
  }
}

TEST(Saturation, CoversUnitCubeForAxes) {
  const SaturationLedger ledger = certify_saturation(ModeSet::unit_axes(), 1, 8);
  EXPECT_EQ(ledger.verdict, SaturationVerdict::Covered);
  ASSERT_TRUE(ledger.first_covering_level[0].has_value());
  EXPECT_LE(*ledger.first_covering_level[0], 6);
  for (std::size_t i = 1; i < ledger.levels.size(); ++i) {
    EXPECT_GT(ledger.levels[i].dim, ledger.levels[i - 1].dim);
  }
}

TEST(Saturation, EvenSublatticeIsUnreachable) {
  const SaturationLedger ledger = certify_saturation(sym({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), 1, 8);
  EXPECT_EQ(ledger.verdict, SaturationVerdict::Unreachable);
  EXPECT_FALSE(ledger.covered(1));
  EXPECT_FALSE(ledger.generator);
}

TEST(Saturation, CollinearSetReachesFixedPoint) {
  const SaturationLedger ledger = certify_saturation(sym({{1, 0, 0}, {2, 0, 0}}), 1, 8);
  EXPECT_EQ(ledger.verdict, SaturationVerdict::FixedPoint);
  EXPECT_FALSE(ledger.covered(1));
}

TEST(Saturation, LedgerCsvHeader) {
  const SaturationLedger ledger = certify_saturation(ModeSet::unit_axes(), 1, 1);
  const std::string csv = ledger.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,dim,max_wavenumber,covered_M1,window_dim_M1");
  EXPECT_EQ(ledger.verdict, SaturationVerdict::LevelLimit);
}

TEST(Witness, CommonPerpExamples) {
  EXPECT_EQ(common_perp(WaveVector(1, 0, 0), WaveVector(0, 1, 0)), (Vec3d{0, 0, 1}));
  EXPECT_THROW(common_perp(WaveVector(1, 0, 0), WaveVector(1, 0, 0)), DegeneratePair);
  EXPECT_THROW(common_perp(WaveVector(1, 0, 0), WaveVector(-2, 0, 0)), DegeneratePair);
  const Vec3d d = common_perp(WaveVector(1, 1, 0), WaveVector(0, 1, 1));
  const double r = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(d[0], r, 1e-15);
  EXPECT_NEAR(d[1], -r, 1e-15);
  EXPECT_NEAR(d[2], r, 1e-15);
}

TEST(Witness, AxisPairReproducesSumMode) {
  const auto w = witness_sum_mode(WaveVector(1, 0, 0), WaveVector(0, 1, 0));
  EXPECT_EQ(w.cos_part.claimed, FieldQ::single(Flavor::Cos, WaveVector(1, 1, 0), Vec3q{0, 0, 1}));
  EXPECT_EQ(w.cos_part.evaluate(), w.cos_part.claimed);
  EXPECT_EQ(w.sin_part.claimed, FieldQ::single(Flavor::Sin, WaveVector(1, 1, 0), Vec3q{0, 0, 1}));
  EXPECT_EQ(w.sin_part.evaluate(), w.sin_part.claimed);
}

TEST(Witness, SoundForAllNonParallelPairsInSmallBox) {
  std::vector<WaveVector> vs;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -1; k <= 1; ++k)
        if (auto l = WaveVector::try_make({i, j, k})) vs.push_back(*l);
  int checked = 0;
  for (std::size_t a = 0; a < vs.size(); a += 3) {
    for (std::size_t b = 0; b < vs.size(); b += 5) {
      if (parallel(vs[a], vs[b])) continue;
      const auto w = witness_sum_mode(vs[a], vs[b]);
      ASSERT_EQ(w.cos_part.evaluate(), w.cos_part.claimed);
      ASSERT_EQ(w.sin_part.evaluate(), w.sin_part.claimed);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Witness, InclusionChainForAxes) {
  EXPECT_TRUE(check_inclusion_chain(ModeSet::unit_axes(), 0, 1));
}
