#include "torusctl/saturation/rational_subspace.hpp"

#include <algorithm>
#include <set>

namespace torusctl {

namespace {

constexpr std::int64_t kSide = 2 * ModeCoordinates::kMaxComponent + 1;

int dependent_index(const WaveVector& l) {
  for (int i = 2; i >= 0; --i) {
    if (l[i] != 0) return i;
  }
  return 0;
}

std::array<int, 2> free_indices(const WaveVector& l) {
  const int dep = dependent_index(l);
  std::array<int, 2> out{};
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != dep) out[n++] = i;
  }
  return out;
}

Vec3q complete(const WaveVector& l, const Rational& x, const Rational& y) {
  const int dep = dependent_index(l);
  const auto fi = free_indices(l);
  Vec3q a{0, 0, 0};
  a[fi[0]] = x;
  a[fi[1]] = y;
  a[dep] = -(x * l[fi[0]] + y * l[fi[1]]) / l[dep];
  return a;
}

// v += coef * row, both sorted.
void axpy_sparse(SparseVector& v, const Rational& coef, const SparseVector& row) {
  SparseVector out;
  out.reserve(v.size() + row.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < row.size()) {
    if (j == row.size() || (i < v.size() && v[i].first < row[j].first)) {
      out.push_back(std::move(v[i++]));
    } else if (i == v.size() || row[j].first < v[i].first) {
      out.emplace_back(row[j].first, coef * row[j].second);
      ++j;
    } else {
      Rational x = v[i].second + coef * row[j].second;
      if (sgn(x) != 0) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

}  // namespace

std::int64_t ModeCoordinates::column(const WaveVector& l, Flavor f, int slot) {
  const int inf = l.norm_inf();
  if (inf > kMaxComponent) throw InvalidWaveVector("wave vector outside coordinate range");
  const std::int64_t lex = ((std::int64_t(l[0]) + kMaxComponent) * kSide + (l[1] + kMaxComponent)) * kSide +
                           (l[2] + kMaxComponent);
  const std::int64_t rank = std::int64_t(kMaxComponent - inf) * kSide * kSide * kSide + lex;
  return rank * 4 + (f == Flavor::Sin ? 2 : 0) + slot;
}

ModeCoordinates::Column ModeCoordinates::decode(std::int64_t key) {
  const int slot = int(key % 2);
  const Flavor f = (key / 2) % 2 ? Flavor::Sin : Flavor::Cos;
  std::int64_t lex = (key / 4) % (kSide * kSide * kSide);
  const int l3 = int(lex % kSide) - kMaxComponent;
  lex /= kSide;
  const int l2 = int(lex % kSide) - kMaxComponent;
  const int l1 = int(lex / kSide) - kMaxComponent;
  return {WaveVector(l1, l2, l3), f, slot};
}

SparseVector ModeCoordinates::encode(const FieldQ& u) {
  SparseVector v;
  for (const auto& [l, c] : u.modes()) {
    const auto fi = free_indices(l);
    for (Flavor f : {Flavor::Cos, Flavor::Sin}) {
      const Vec3q& a = f == Flavor::Cos ? c.cos : c.sin;
      for (int s = 0; s < 2; ++s) {
        if (sgn(a[fi[s]]) != 0) v.emplace_back(column(l, f, s), a[fi[s]]);
      }
    }
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

FieldQ ModeCoordinates::decode_field(const SparseVector& v) {
  std::map<WaveVector, std::array<Rational, 4>> acc;
  for (const auto& [key, x] : v) {
    const Column col = decode(key);
    acc[col.wavevector][(col.flavor == Flavor::Sin ? 2 : 0) + col.slot] = x;
  }
  FieldQ::Map m;
  for (const auto& [l, xs] : acc) {
    m[l] = {complete(l, xs[0], xs[1]), complete(l, xs[2], xs[3])};
  }
  return FieldQ::from_normal_map(std::move(m));
}

SparseVector RationalSubspace::reduce(SparseVector v) const {
  // Columns only grow under elimination, so one left-to-right sweep suffices.
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivots_.find(v[pos].first);
    if (it == pivots_.end()) {
      ++pos;
      continue;
    }
    const Rational coef = -v[pos].second;
    const std::int64_t key = v[pos].first;
    axpy_sparse(v, coef, rows_[it->second]);
    pos = std::upper_bound(v.begin(), v.end(), key,
                           [](std::int64_t k, const auto& e) { return k < e.first; }) -
          v.begin();
  }
  return v;
}

bool RationalSubspace::insert(const FieldQ& u) { return insert(ModeCoordinates::encode(u)); }

bool RationalSubspace::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const Rational inv = 1 / v.front().second;
  for (auto& e : v) e.second *= inv;
  pivots_.emplace(v.front().first, rows_.size());
  rows_.push_back(std::move(v));
  canonical_ = rows_.size() == 1;
  return true;
}

bool RationalSubspace::contains(const FieldQ& u) const {
  return reduce(ModeCoordinates::encode(u)).empty();
}

bool RationalSubspace::contains_all(const RationalSubspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const SparseVector& r) { return reduce(r).empty(); });
}

std::size_t RationalSubspace::dim_within(int M) const {
  std::size_t n = 0;
  for (const auto& [key, idx] : pivots_) {
    if (ModeCoordinates::decode(key).wavevector.norm_inf() <= M) ++n;
  }
  return n;
}

std::vector<WaveVector> RationalSubspace::support() const {
  std::set<WaveVector> s;
  for (const auto& r : rows_) {
    for (const auto& [key, x] : r) s.insert(ModeCoordinates::decode(key).wavevector);
  }
  return {s.begin(), s.end()};
}

int RationalSubspace::max_wavenumber() const {
  int m = 0;
  for (const auto& l : support()) m = std::max(m, l.norm_inf());
  return m;
}

long RationalSubspace::max_norm2() const {
  long m = 0;
  for (const auto& l : support()) m = std::max(m, l.norm2());
  return m;
}

void RationalSubspace::canonicalize() {
  if (canonical_) return;
  // Order rows by pivot, then clear every entry above each pivot, working
  // from the last pivot column backwards.
  std::vector<SparseVector> sorted;
  sorted.reserve(rows_.size());
  for (const auto& [key, idx] : pivots_) sorted.push_back(std::move(rows_[idx]));
  std::map<std::int64_t, std::size_t> piv;
  for (std::size_t i = 0; i < sorted.size(); ++i) piv.emplace(sorted[i].front().first, i);

  for (std::size_t i = sorted.size(); i-- > 0;) {
    SparseVector& row = sorted[i];
    std::size_t pos = 1;
    while (pos < row.size()) {
      auto it = piv.find(row[pos].first);
      if (it == piv.end()) {
        ++pos;
        continue;
      }
      const std::int64_t key = row[pos].first;
      const Rational coef = -row[pos].second;
      axpy_sparse(row, coef, sorted[it->second]);
      pos = std::upper_bound(row.begin(), row.end(), key,
                             [](std::int64_t k, const auto& e) { return k < e.first; }) -
            row.begin();
    }
  }
  rows_ = std::move(sorted);
  pivots_ = std::move(piv);
  canonical_ = true;
}

std::vector<FieldQ> RationalSubspace::basis() const {
  std::vector<FieldQ> out;
  out.reserve(rows_.size());
  for (const auto& [key, idx] : pivots_) out.push_back(ModeCoordinates::decode_field(rows_[idx]));
  return out;
}

bool operator==(RationalSubspace a, RationalSubspace b) {
  if (a.rank() != b.rank()) return false;
  a.canonicalize();
  b.canonicalize();
  return a.rows_ == b.rows_;
}

}  // namespace torusctl
