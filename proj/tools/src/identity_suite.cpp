#include "torusctl_cli/identity_suite.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/grid_oracle.hpp"
#include "torusctl/fourier/polarization.hpp"
#include "torusctl/fourier/random_field.hpp"

namespace torusctl::cli {

namespace {

std::vector<WaveVector> canonical_box(int m) {
  std::vector<WaveVector> out;
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j)
      for (int k = -m; k <= m; ++k) {
        auto l = WaveVector::try_make({i, j, k});
        if (l && l->is_canonical()) out.push_back(*l);
      }
  return out;
}

template <class Rng>
FieldD random_mode(Rng& rng, int box) {
  std::uniform_int_distribution<int> comp(-box, box);
  std::uniform_int_distribution<int> coin(0, 1);
  std::normal_distribution<double> n01;
  while (true) {
    auto l = WaveVector::try_make({comp(rng), comp(rng), comp(rng)});
    if (!l) continue;
    const auto pb = polarization_basis(*l);
    const double x = n01(rng), y = n01(rng);
    Vec3d a{};
    for (int i = 0; i < 3; ++i) a[i] = x * pb.l_plus[i] + y * pb.l_minus[i];
    return FieldD::single(coin(rng) ? Flavor::Cos : Flavor::Sin, *l, a);
  }
}

IdentityCheck closed_form_check(int box, bool flip) {
  IdentityCheck c{"closed_form_exact", 0, 0, 0.0, 0.0};
  if (box < 1) return c;
  ClosedFormOptions opt;
  opt.flip_cos_cos_sign = flip;
  const auto modes = canonical_box(box);
  for (const auto& l1 : modes) {
    const auto [p1, m1] = integer_polarization(l1);
    for (const auto& l2 : modes) {
      const auto [p2, m2] = integer_polarization(l2);
      for (const IntVec3& ai : {p1, m1}) {
        for (const IntVec3& bi : {p2, m2}) {
          const Vec3q a = to_vec<Rational>(ai), b = to_vec<Rational>(bi);
          for (Flavor f1 : {Flavor::Cos, Flavor::Sin}) {
            for (Flavor f2 : {Flavor::Cos, Flavor::Sin}) {
              ++c.cases;
              const FieldQ lhs = bilinear_Q(FieldQ::single(f1, l1, a), FieldQ::single(f2, l2, b));
              if (!(lhs == q_closed_form(f1, l1, a, f2, l2, b, opt))) ++c.failures;
            }
          }
        }
      }
    }
  }
  return c;
}

IdentityCheck symmetry_check(int box) {
  IdentityCheck c{"q_symmetry_exact", 0, 0, 0.0, 0.0};
  if (box < 1) return c;
  const auto modes = canonical_box(std::min(box, 1));
  for (const auto& l1 : modes) {
    for (const auto& l2 : modes) {
      const auto [p1, m1] = integer_polarization(l1);
      const auto [p2, m2] = integer_polarization(l2);
      const FieldQ v = FieldQ::single(Flavor::Cos, l1, to_vec<Rational>(p1)) +
                       FieldQ::single(Flavor::Sin, l1, to_vec<Rational>(m1));
      const FieldQ w = FieldQ::single(Flavor::Sin, l2, to_vec<Rational>(p2)) +
                       FieldQ::single(Flavor::Cos, l2, to_vec<Rational>(m2));
      ++c.cases;
      if (!(bilinear_Q(v, w) == bilinear_Q(w, v))) ++c.failures;
    }
  }
  return c;
}

IdentityCheck oracle_check(int pairs, int box, std::uint64_t seed, bool q_form) {
  IdentityCheck c{q_form ? "q_vs_grid_oracle" : "b_vs_grid_oracle", 0, 0, 0.0, 1e-10};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < pairs; ++i) {
    const FieldD v = random_mode(rng, box);
    const FieldD w = random_mode(rng, box);
    const int n = oracle_min_grid(v, w);
    const FieldD fast = q_form ? bilinear_Q(v, w) : bilinear_B(v, w);
    const FieldD slow = q_form ? q_oracle(v, w, n) : b_oracle(v, w, n);
    const double scale = sobolev_norm(v, 1) * sobolev_norm(w, 0) + sobolev_norm(v, 0) * sobolev_norm(w, 1);
    const double r = scale > 0.0 ? sobolev_norm(fast - slow, 0) / scale : 0.0;
    ++c.cases;
    c.worst = std::max(c.worst, r);
    if (!(r <= c.tolerance)) ++c.failures;
  }
  return c;
}

IdentityCheck skew_check(int trials, std::uint64_t seed) {
  IdentityCheck c{"skew_symmetry", 0, 0, 0.0, 1e-12};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const FieldD u = random_field(2, 1, 1.0, rng);
    const FieldD v = random_field(2, 1, 1.0, rng);
    const double scale = sobolev_norm(u, 0) * sobolev_norm(v, 1) * sobolev_norm(v, 0);
    const double r = std::abs(l2_inner(bilinear_B(u, v), v)) / scale;
    ++c.cases;
    c.worst = std::max(c.worst, r);
    if (!(r <= c.tolerance)) ++c.failures;
  }
  return c;
}

}  // namespace

bool IdentityReport::vacuous() const {
  for (const auto& c : checks)
    if (c.cases > 0) return false;
  return true;
}

bool IdentityReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

double IdentityReport::worst_float_residual() const {
  double w = 0.0;
  for (const auto& c : checks) w = std::max(w, c.worst);
  return w;
}

std::string IdentityReport::to_csv() const {
  std::ostringstream os;
  os << "check,cases,failures,worst_residual,tolerance,status\n";
  for (const auto& c : checks) {
    os << c.name << ',' << c.cases << ',' << c.failures << ',' << std::setprecision(6) << c.worst << ','
       << c.tolerance << ',' << (c.pass() ? "pass" : "FAIL") << "\n";
  }
  return os.str();
}

IdentityReport run_identity_suite(const IdentityOptions& opt) {
  IdentityReport rep;
  rep.checks.push_back(closed_form_check(opt.exact_box, opt.flip_cos_cos_sign));
  rep.checks.push_back(symmetry_check(opt.exact_box));
  rep.checks.push_back(oracle_check(opt.oracle_pairs, opt.oracle_box, opt.seed, true));
  rep.checks.push_back(oracle_check(opt.oracle_pairs, opt.oracle_box, opt.seed + 1, false));
  rep.checks.push_back(skew_check(opt.oracle_pairs > 0 ? 20 : 0, opt.seed + 2));
  return rep;
}

}  // namespace torusctl::cli
