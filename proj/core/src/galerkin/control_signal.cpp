#include "torusctl/galerkin/control_signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "torusctl/errors.hpp"

namespace torusctl {

PiecewiseConstantSource::PiecewiseConstantSource(std::vector<double> edges, std::vector<DenseField> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
  if (edges_.size() != values_.size() + 1 || values_.empty()) {
    throw std::invalid_argument("piecewise-constant source needs one more edge than values");
  }
  if (!std::is_sorted(edges_.begin(), edges_.end())) {
    throw std::invalid_argument("piecewise-constant edges must be increasing");
  }
}

void PiecewiseConstantSource::accumulate(double, double piece, double coef, DenseField& out) const {
  if (piece < edges_.front() || piece > edges_.back()) return;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), piece);
  std::size_t i = it == edges_.begin() ? 0 : std::size_t(it - edges_.begin()) - 1;
  i = std::min(i, values_.size() - 1);
  out += coef * values_[i];
}

std::vector<double> PiecewiseConstantSource::breakpoints() const {
  return {edges_.begin() + 1, edges_.end() - 1};
}

ControlSignal::ControlSignal(std::shared_ptr<const GalerkinSpace> space, double t0, double t1)
    : space_(std::move(space)), t0_(t0), t1_(t1) {
  if (!(t1 > t0)) throw std::invalid_argument("control interval must have positive length");
}

void ControlSignal::add(std::shared_ptr<const ControlSource> source, double coef, double time_scale) {
  if (!space_) throw std::logic_error("control signal has no Galerkin space");
  if (!(time_scale > 0.0)) throw std::invalid_argument("time scale must be positive");
  terms_.push_back({std::move(source), coef, time_scale});
}

void ControlSignal::accumulate(double t, double piece, double coef, DenseField& out) const {
  for (const auto& term : terms_) {
    term.source->accumulate((t - term.offset) / term.time_scale, (piece - term.offset) / term.time_scale,
                           coef * term.coef, out);
  }
}

DenseField ControlSignal::evaluate(double t, double piece) const {
  if (!space_) throw std::logic_error("control signal has no Galerkin space");
  DenseField out = space_->zero();
  accumulate(t, piece, 1.0, out);
  return out;
}

FieldD ControlSignal::evaluate_field(double t) const { return space_->to_field(evaluate(t)); }

std::vector<double> ControlSignal::breakpoints() const {
  std::vector<double> out;
  for (const auto& term : terms_) {
    for (double s : term.source->breakpoints()) {
      const double t = term.offset + s * term.time_scale;
      if (t > t0_ && t < t1_) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ControlSignal::l2_time_norm(int k, int subdivisions) const {
  if (terms_.empty()) return 0.0;
  static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831,
                                           -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                           0.2369268850561891, 0.2369268850561891};
  std::vector<double> edges{t0_};
  for (double b : breakpoints()) edges.push_back(b);
  edges.push_back(t1_);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double h = (edges[i + 1] - edges[i]) / subdivisions;
    for (int p = 0; p < subdivisions; ++p) {
      const double a = edges[i] + p * h;
      const double mid = a + 0.5 * h;
      for (int q = 0; q < 5; ++q) {
        const double t = mid + 0.5 * h * x[q];
        acc += 0.5 * h * w[q] * space_->sobolev_norm_sq(evaluate(t, mid), k);
      }
    }
  }
  return std::sqrt(acc);
}

ControlSignal ControlSignal::scaled(double c) const {
  ControlSignal out = *this;
  for (auto& term : out.terms_) term.coef *= c;
  return out;
}

ControlSignal ControlSignal::shifted(double dt) const {
  ControlSignal out = *this;
  out.t0_ += dt;
  out.t1_ += dt;
  for (auto& term : out.terms_) term.offset += dt;
  return out;
}

ControlSignal ControlSignal::operator+(const ControlSignal& other) const {
  if (terms_.empty()) return other;
  if (other.terms_.empty()) return *this;
  if (space_ != other.space_ || t0_ != other.t0_ || t1_ != other.t1_) {
    throw HorizonMismatch("cannot add control signals on different intervals or spaces");
  }
  ControlSignal out = *this;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

}  // namespace torusctl
