#include "torusctl/control/observable_family.hpp"

#include <algorithm>
#include <cmath>

namespace torusctl {

std::vector<int> odd_primes(std::size_t n) {
  std::vector<int> out;
  for (int c = 3; out.size() < n; c += 2) {
    bool prime = true;
    for (int d = 3; d * d <= c; d += 2) {
      if (c % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

namespace {

std::vector<ObservableFamily::Slot> make_slots(const ModeSet& k, bool with_primes) {
  std::vector<ObservableFamily::Slot> slots;
  for (const auto& l : k.vectors()) {
    for (Flavor f : {Flavor::Cos, Flavor::Sin}) slots.push_back({l, f, 0});
  }
  if (with_primes) {
    const auto primes = odd_primes(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i].prime = primes[i];
  }
  return slots;
}

}  // namespace

ObservableFamily ObservableFamily::square_waves(const ModeSet& k, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  return ObservableFamily(Kind::SquareWave, T, make_slots(k, true), 0.0);
}

ObservableFamily ObservableFamily::constant(const ModeSet& k, double T, double value) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  return ObservableFamily(Kind::Constant, T, make_slots(k, false), value);
}

ObservableFamily make_observable_family(const ModeSet& k, double T) {
  return ObservableFamily::square_waves(k, T);
}

namespace {

long piece_index(double t, int p, double T) {
  const long n = long(std::floor(p * t / T));
  return std::clamp(n, 0L, long(p) - 1);
}

}  // namespace

double ObservableFamily::value(std::size_t i, double piece) const {
  if (kind_ == Kind::Constant) return constant_;
  const long n = piece_index(piece, slots_[i].prime, T_);
  return n % 2 == 0 ? 1.0 : -1.0;
}

double ObservableFamily::integral(std::size_t i, double t) const {
  if (kind_ == Kind::Constant) return constant_ * t;
  const int p = slots_[i].prime;
  const double h = T_ / p;
  const long n = piece_index(t, p, T_);
  const double base = (n % 2 == 1) ? h : 0.0;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return base + sign * (t - n * h);
}

std::vector<double> ObservableFamily::jumps(std::size_t i) const {
  if (kind_ == Kind::Constant) return {};
  const int p = slots_[i].prime;
  std::vector<double> out;
  for (int k = 1; k < p; ++k) out.push_back(T_ * k / p);
  return out;
}

std::vector<double> ObservableFamily::all_jumps() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const auto j = jumps(i);
    out.insert(out.end(), j.begin(), j.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ObservableFamily::jump_sets_disjoint() const {
  // Compare the rationals k/p exactly.
  for (std::size_t a = 0; a < slots_.size(); ++a) {
    for (std::size_t b = a + 1; b < slots_.size(); ++b) {
      const int p = slots_[a].prime, q = slots_[b].prime;
      if (p == 0 || q == 0) continue;
      for (int i = 1; i < p; ++i) {
        for (int j = 1; j < q; ++j) {
          if (long(i) * q == long(j) * p) return false;
        }
      }
    }
  }
  return true;
}

double ObservableFamily::sup_norm() const { return kind_ == Kind::Constant ? std::abs(constant_) : 1.0; }

}  // namespace torusctl
