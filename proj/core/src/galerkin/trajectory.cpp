#include "torusctl/galerkin/trajectory.hpp"

#include <algorithm>
#include <sstream>

#include "torusctl/errors.hpp"
#include "torusctl/fourier/scalar.hpp"

namespace torusctl {

void Trajectory::push(double t, DenseField u) {
  if (!times_.empty() && !(t > times_.back())) {
    throw std::invalid_argument("trajectory times must increase strictly");
  }
  times_.push_back(t);
  states_.push_back(std::move(u));
}

void Trajectory::append(const Trajectory& other) {
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (!times_.empty() && other.times_[i] <= times_.back()) continue;
    push(other.times_[i], other.states_[i]);
  }
}

std::vector<double> Trajectory::sobolev_series(int k) const {
  std::vector<double> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(space_->sobolev_norm(s, k));
  return out;
}

DenseField Trajectory::interpolate(double t) const {
  if (times_.empty()) throw HorizonMismatch("empty trajectory");
  const double tol = 1e-12 * std::max(1.0, std::abs(times_.back()));
  if (t < times_.front() - tol || t > times_.back() + tol) {
    throw HorizonMismatch("time " + std::to_string(t) + " outside trajectory [" +
                          std::to_string(times_.front()) + ", " + std::to_string(times_.back()) + "]");
  }
  if (t <= times_.front()) return states_.front();
  if (t >= times_.back()) return states_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::size_t(it - times_.begin());
  const double a = times_[i - 1], b = times_[i];
  const double s = (t - a) / (b - a);
  return (1.0 - s) * states_[i - 1] + s * states_[i];
}

std::string Trajectory::norms_csv(int k) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < size(); ++i) {
    os << ScalarTraits<double>::format(times_[i]) << ',' << ScalarTraits<double>::format(sobolev_norm(i, k))
       << ',' << ScalarTraits<double>::format(sobolev_norm(i, 0)) << '\n';
  }
  return os.str();
}

}  // namespace torusctl
