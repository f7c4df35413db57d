#include "torusctl/saturation/lattice.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdlib>

#include "torusctl/errors.hpp"

namespace torusctl {

namespace {

using Row = std::array<mpz_class, 3>;

int pivot_col(const IntVec3& r) {
  for (int c = 0; c < 3; ++c) {
    if (r[c] != 0) return c;
  }
  return 3;
}

}  // namespace

IntegerLattice::IntegerLattice(const std::vector<IntVec3>& generators) {
  std::vector<Row> work;
  for (const auto& g : generators) work.push_back({g[0], g[1], g[2]});

  std::vector<Row> hnf;
  std::size_t top = 0;
  for (int col = 0; col < 3 && top < work.size(); ++col) {
    // Euclid on column `col` among rows top..end until one nonzero remains.
    while (true) {
      std::size_t best = work.size();
      for (std::size_t r = top; r < work.size(); ++r) {
        if (work[r][col] != 0 && (best == work.size() || abs(work[r][col]) < abs(work[best][col]))) {
          best = r;
        }
      }
      if (best == work.size()) break;
      std::swap(work[top], work[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < work.size(); ++r) {
        if (work[r][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), work[r][col].get_mpz_t(), work[top][col].get_mpz_t());
        for (int c = 0; c < 3; ++c) work[r][c] -= q * work[top][c];
        if (work[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (top < work.size() && work[top][col] != 0) {
      if (work[top][col] < 0) {
        for (auto& x : work[top]) x = -x;
      }
      ++top;
    }
  }
  work.resize(top);

  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t r = 0; r < work.size(); ++r) {
    int pc = 0;
    while (work[r][pc] == 0) ++pc;
    for (std::size_t up = 0; up < r; ++up) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), work[up][pc].get_mpz_t(), work[r][pc].get_mpz_t());
      for (int c = 0; c < 3; ++c) work[up][c] -= q * work[r][c];
    }
  }

  for (const auto& r : work) {
    IntVec3 v;
    for (int c = 0; c < 3; ++c) {
      if (!r[c].fits_sint_p()) throw Error("lattice basis entry overflows int");
      v[c] = static_cast<int>(r[c].get_si());
    }
    rows_.push_back(v);
  }
}

namespace {

std::vector<IntVec3> components(const ModeSet& k) {
  std::vector<IntVec3> out;
  for (const auto& l : k.vectors()) out.push_back(l.components());
  return out;
}

}  // namespace

IntegerLattice::IntegerLattice(const ModeSet& k) : IntegerLattice(components(k)) {}

long IntegerLattice::index() const {
  long prod = 1;
  for (const auto& r : rows_) prod *= r[pivot_col(r)];
  return prod;
}

bool IntegerLattice::contains(const IntVec3& v) const {
  std::array<long, 3> rem{v[0], v[1], v[2]};
  for (const auto& r : rows_) {
    const int pc = pivot_col(r);
    for (int c = 0; c < pc; ++c) {
      if (rem[c] != 0) return false;
    }
    if (rem[pc] % r[pc] != 0) return false;
    const long q = rem[pc] / r[pc];
    for (int c = 0; c < 3; ++c) rem[c] -= q * r[c];
  }
  return rem[0] == 0 && rem[1] == 0 && rem[2] == 0;
}

bool is_generator(const ModeSet& k) { return IntegerLattice(k).is_full(); }

}  // namespace torusctl
