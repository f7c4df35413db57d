#include "torusctl/saturation/saturation.hpp"

#include <sstream>

#include "torusctl/fourier/bilinear.hpp"
#include "torusctl/fourier/polarization.hpp"
#include "torusctl/saturation/lattice.hpp"

namespace torusctl {

namespace {

void push_mode_generators(std::vector<FieldQ>& out, const WaveVector& l) {
  const auto [p, m] = integer_polarization(l);
  for (Flavor f : {Flavor::Cos, Flavor::Sin}) {
    out.push_back(FieldQ::single(f, l, to_vec<Rational>(p)));
    out.push_back(FieldQ::single(f, l, to_vec<Rational>(m)));
  }
}

std::vector<WaveVector> canonical_box(int M) {
  std::vector<WaveVector> out;
  for (int i = 0; i <= M; ++i)
    for (int j = -M; j <= M; ++j)
      for (int l = -M; l <= M; ++l) {
        auto w = WaveVector::try_make({i, j, l});
        if (w && w->is_canonical()) out.push_back(*w);
      }
  return out;
}

}  // namespace

std::vector<FieldQ> h0_generators(const ModeSet& k) {
  std::vector<FieldQ> out;
  for (const auto& l : k.canonical_pairs()) push_mode_generators(out, l);
  return out;
}

RationalSubspace h0_subspace(const ModeSet& k) {
  RationalSubspace h;
  for (const auto& g : h0_generators(k)) h.insert(g);
  return h;
}

RationalSubspace next_subspace(const RationalSubspace& h_prev, const RationalSubspace& h0) {
  RationalSubspace next = h_prev;
  const auto prev_basis = h_prev.basis();
  const auto h0_basis = h0.basis();
  for (const auto& eta : prev_basis) {
    for (const auto& xi : h0_basis) next.insert(bilinear_Q(eta, xi));
  }
  return next;
}

std::vector<FieldQ> truncation_generators(int M) {
  std::vector<FieldQ> out;
  for (const auto& l : canonical_box(M)) push_mode_generators(out, l);
  return out;
}

std::size_t truncation_dimension(int M) { return 4 * canonical_box(M).size(); }

SaturationChain::SaturationChain(const ModeSet& k) : k_(k), h0_(h0_generators(k)) {
  for (const auto& g : h0_) {
    if (space_.insert(g)) frontier_.push_back(g);
  }
}

std::size_t SaturationChain::advance() {
  std::vector<FieldQ> next;
  for (const auto& eta : frontier_) {
    for (const auto& xi : h0_) {
      FieldQ q = bilinear_Q(eta, xi);
      if (q.empty()) continue;
      if (space_.insert(q)) next.push_back(std::move(q));
    }
  }
  frontier_ = std::move(next);
  ++level_;
  return frontier_.size();
}

RationalSubspace h_subspace(const ModeSet& k, int level) {
  SaturationChain chain(k);
  while (chain.level() < level) chain.advance();
  return chain.snapshot();
}

std::string to_string(SaturationVerdict v) {
  switch (v) {
    case SaturationVerdict::Covered: return "covered";
    case SaturationVerdict::FixedPoint: return "fixed-point";
    case SaturationVerdict::Unreachable: return "unreachable";
    case SaturationVerdict::LevelLimit: return "level-limit";
  }
  return "unknown";
}

bool SaturationLedger::covered(int M) const {
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] == M) return first_covering_level[i].has_value();
  }
  return false;
}

std::string SaturationLedger::to_csv() const {
  std::ostringstream os;
  os << "level,dim,max_wavenumber";
  for (int m : cutoffs) os << ",covered_M" << m;
  for (int m : cutoffs) os << ",window_dim_M" << m;
  os << '\n';
  for (const auto& r : levels) {
    os << r.level << ',' << r.dim << ',' << r.max_wavenumber;
    for (bool c : r.covered) os << ',' << (c ? 1 : 0);
    for (auto d : r.window_dims) os << ',' << d;
    os << '\n';
  }
  return os.str();
}

SaturationLedger certify_saturation(const ModeSet& k, int M, int max_level, int patience) {
  if (M < 1) throw std::invalid_argument("cutoff M must be at least 1");
  SaturationLedger ledger;
  const IntegerLattice lattice(k);
  ledger.generator = lattice.is_full();

  bool window_reachable = true;
  for (const auto& l : canonical_box(M)) {
    if (!lattice.contains(l.components())) window_reachable = false;
  }

  std::vector<std::vector<FieldQ>> families;
  std::vector<std::size_t> full_dims;
  for (int m = 1; m <= M; ++m) {
    ledger.cutoffs.push_back(m);
    ledger.first_covering_level.push_back(std::nullopt);
    families.push_back(truncation_generators(m));
    full_dims.push_back(truncation_dimension(m));
  }

  SaturationChain chain(k);
  int unchanged = 0;
  while (true) {
    const RationalSubspace& h = chain.current();
    LevelRecord rec;
    rec.level = chain.level();
    rec.dim = h.rank();
    rec.max_wavenumber = h.max_wavenumber();
    bool all_covered = true;
    for (std::size_t c = 0; c < ledger.cutoffs.size(); ++c) {
      rec.window_dims.push_back(h.dim_within(ledger.cutoffs[c]));
      bool cov = ledger.first_covering_level[c].has_value();
      // Count first, then confirm by membership of the spanning family.
      if (!cov && rec.window_dims[c] == full_dims[c]) {
        cov = std::all_of(families[c].begin(), families[c].end(),
                          [&h](const FieldQ& g) { return h.contains(g); });
        if (cov) ledger.first_covering_level[c] = rec.level;
      }
      rec.covered.push_back(cov);
      all_covered = all_covered && cov;
    }
    const bool window_same =
        !ledger.levels.empty() && ledger.levels.back().window_dims == rec.window_dims;
    unchanged = window_same ? unchanged + 1 : 0;
    const bool fixed_point = !ledger.levels.empty() && ledger.levels.back().dim == rec.dim;
    ledger.levels.push_back(std::move(rec));

    if (all_covered) {
      ledger.verdict = SaturationVerdict::Covered;
      break;
    }
    if (fixed_point) {
      ledger.verdict = SaturationVerdict::FixedPoint;
      break;
    }
    if (!window_reachable && unchanged >= patience) {
      ledger.verdict = SaturationVerdict::Unreachable;
      break;
    }
    if (chain.level() >= max_level) {
      ledger.verdict = SaturationVerdict::LevelLimit;
      break;
    }
    chain.advance();
  }
  return ledger;
}

}  // namespace torusctl
