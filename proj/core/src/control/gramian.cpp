#include "torusctl/control/gramian.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <cmath>
#include <map>
#include <random>

#include "torusctl/fourier/random_field.hpp"

namespace torusctl {

namespace {

using SparseMat = Eigen::SparseMatrix<double>;

// A(t) = sum_i psi_i(t) S_i with S_i x = frame(Q(x, e_i)), stored on the
// union sparsity pattern so that assembling A(t) is one dense combination of
// value arrays.
class CouplingOperator {
 public:
  CouplingOperator(const GalerkinSpace& sp, const ReferenceTrajectory& ref) : ref_(ref) {
    const std::size_t n = sp.frame_dim();
    const std::size_t slots = ref.num_slots();
    std::vector<DenseField> e(slots);
    for (std::size_t i = 0; i < slots; ++i) e[i] = sp.from_field(ref.slot_fields()[i]);

    std::map<std::pair<int, int>, std::vector<double>> entries;
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    for (std::size_t j = 0; j < n; ++j) {
      unit.setZero();
      unit[j] = 1.0;
      const DenseField x = sp.from_frame(unit);
      for (std::size_t i = 0; i < slots; ++i) {
        const Eigen::VectorXd col = sp.to_frame(sp.Q(x, e[i]));
        for (Eigen::Index r = 0; r < col.size(); ++r) {
          if (std::abs(col[r]) <= 1e-15) continue;
          auto& v = entries[{int(r), int(j)}];
          if (v.empty()) v.assign(slots, 0.0);
          v[i] = col[r];
        }
      }
    }
    std::vector<Eigen::Triplet<double>> trip;
    for (const auto& [rc, v] : entries) trip.emplace_back(rc.first, rc.second, 1.0);
    a_.resize(Eigen::Index(n), Eigen::Index(n));
    a_.setFromTriplets(trip.begin(), trip.end());
    a_.makeCompressed();
    vals_.resize(a_.nonZeros(), Eigen::Index(slots));
    Eigen::Index p = 0;
    for (Eigen::Index c = 0; c < a_.outerSize(); ++c) {
      for (SparseMat::InnerIterator it(a_, c); it; ++it, ++p) {
        const auto& v = entries.at({int(it.row()), int(it.col())});
        for (std::size_t i = 0; i < slots; ++i) vals_(p, Eigen::Index(i)) = v[i];
      }
    }
    psi_.resize(Eigen::Index(slots));
  }

  const SparseMat& at(double t) {
    for (Eigen::Index i = 0; i < psi_.size(); ++i) psi_[i] = ref_.psi(std::size_t(i), t);
    Eigen::Map<Eigen::VectorXd>(a_.valuePtr(), a_.nonZeros()) = vals_ * psi_;
    return a_;
  }

 private:
  const ReferenceTrajectory& ref_;
  SparseMat a_;
  Eigen::MatrixXd vals_;
  Eigen::VectorXd psi_;
};

std::vector<double> segment_edges(double T, int segments) {
  std::vector<double> edges(std::size_t(segments) + 1);
  for (int s = 0; s <= segments; ++s) edges[std::size_t(s)] = T * s / segments;
  edges.back() = T;
  return edges;
}

}  // namespace

GramianSolver::GramianSolver(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref,
                             const SimConfig& cfg, Eigen::MatrixXd directions, const GramianOptions& opt)
    : space_(std::move(space)),
      ref_(ref),
      path_(ref.path()),
      cfg_(cfg),
      dirs_(std::move(directions)),
      opt_(opt),
      T_(ref.horizon()) {
  if (opt_.segments < 1) throw std::invalid_argument("at least one time segment is required");
  if (std::size_t(dirs_.rows()) != space_->frame_dim()) {
    throw std::invalid_argument("control directions must be given in frame coordinates");
  }
  cfg_.T = T_;
  // Same step rule as the nonlinear integrator, with ||u||_1 replaced by the
  // largest ||w(t)||_1; the replay uses this config too.
  double wmax = 0.0;
  for (int i = 0; i <= 256; ++i) wmax = std::max(wmax, space_->sobolev_norm(ref_.w(T_ * i / 256.0), 1));
  if (wmax > 0.0) cfg_.dt_max = std::min(cfg_.dt_max, cfg_.cfl / (wmax * space_->cutoff()));
  assemble();
  factorize();
}

void GramianSolver::assemble() {
  const GalerkinSpace& sp = *space_;
  const Eigen::Index n = Eigen::Index(sp.frame_dim());
  const Eigen::Index d = dirs_.cols();
  const int S = opt_.segments;
  const auto edges = segment_edges(T_, S);

  std::vector<double> extra(edges.begin() + 1, edges.end() - 1);
  const auto wb = ref_.breakpoints();
  extra.insert(extra.end(), wb.begin(), wb.end());
  const std::vector<double> events = event_grid(0.0, T_, extra);

  CouplingOperator coupling(sp, ref_);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, Eigen::Index(S) * d);

  // Active columns: every segment that has started. Segment s forces its own
  // block with the direction matrix while the step midpoint lies inside it.
  auto segment_of = [&](double piece) {
    int s = int(std::floor(piece / T_ * S));
    return std::clamp(s, 0, S - 1);
  };
  auto rhs = [&](double t, int seg, const Eigen::MatrixXd& x) {
    const SparseMat& a = coupling.at(t);
    Eigen::MatrixXd out = -(a * x);
    out.middleCols(Eigen::Index(seg) * d, d) += dirs_;
    return out;
  };

  for (std::size_t e = 0; e + 1 < events.size(); ++e) {
    const double a = events[e], b = events[e + 1];
    const long steps = std::max(1L, long(std::ceil((b - a) / cfg_.dt_max - 1e-9)));
    const double h = (b - a) / steps;
    for (long i = 0; i < steps; ++i) {
      const double t = a + i * h;
      const int seg = segment_of(t + 0.5 * h);
      const Eigen::Index active = Eigen::Index(seg + 1) * d;
      auto x = V.leftCols(active);
      const Eigen::MatrixXd k1 = rhs(t, seg, x);
      const Eigen::MatrixXd k2 = rhs(t + 0.5 * h, seg, x + 0.5 * h * k1);
      const Eigen::MatrixXd k3 = rhs(t + 0.5 * h, seg, x + 0.5 * h * k2);
      const Eigen::MatrixXd k4 = rhs(t + h, seg, x + h * k3);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  resp_ = std::move(V);
}

void GramianSolver::factorize() {
  const GalerkinSpace& sp = *space_;
  Eigen::BDCSVD<Eigen::MatrixXd> plain(resp_);
  sv_ = plain.singularValues();

  weights_ = sp.frame_weights(cfg_.k);
  const double h = T_ / opt_.segments;
  const Eigen::MatrixXd scaled = weights_.asDiagonal() * resp_ / std::sqrt(h);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  s_ = svd.singularValues();
  U_ = svd.matrixU();
  V_ = svd.matrixV();
  const double smax = s_.size() > 0 ? s_[0] : 0.0;
  lambda_ = opt_.lambda_rel * smax * smax;
}

std::size_t GramianSolver::rank() const {
  if (sv_.size() == 0 || sv_[0] == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv_.size(); ++i) {
    if (sv_[i] > opt_.rank_tol * sv_[0]) ++r;
  }
  return r;
}

Eigen::VectorXd GramianSolver::coefficients(const DenseField& target) const {
  const GalerkinSpace& sp = *space_;
  const Eigen::VectorXd b = weights_.cwiseProduct(sp.to_frame(target));
  const double smax = s_.size() > 0 ? s_[0] : 0.0;
  Eigen::VectorXd filt = Eigen::VectorXd::Zero(s_.size());
  for (Eigen::Index i = 0; i < s_.size(); ++i) {
    if (s_[i] > smax / opt_.cond_limit) filt[i] = s_[i] / (s_[i] * s_[i] + lambda_);
  }
  const Eigen::VectorXd y = V_ * filt.cwiseProduct(U_.transpose() * b);
  return y / std::sqrt(T_ / opt_.segments);
}

ControlSignal GramianSolver::control(const Eigen::VectorXd& coefficients) const {
  const GalerkinSpace& sp = *space_;
  const Eigen::Index d = dirs_.cols();
  if (coefficients.size() != Eigen::Index(num_atoms())) throw std::invalid_argument("wrong number of atom coefficients");
  std::vector<DenseField> values;
  for (int s = 0; s < opt_.segments; ++s) {
    values.push_back(sp.from_frame(dirs_ * coefficients.segment(Eigen::Index(s) * d, d)));
  }
  ControlSignal g(space_, 0.0, T_);
  g.add(std::make_shared<PiecewiseConstantSource>(segment_edges(T_, opt_.segments), std::move(values)));
  return g;
}

DenseField GramianSolver::predicted_endpoint(const Eigen::VectorXd& coefficients) const {
  return space_->from_frame(resp_ * coefficients);
}

DenseField GramianSolver::replay_endpoint(const DenseField& v0, const ControlSignal& g) const {
  SolveOptions opt;
  opt.t0 = 0.0;
  opt.t1 = T_;
  opt.record_every = 1 << 30;
  return solve_linearised_euler(space_, v0, *path_, g, cfg_, opt).final_state();
}

DenseField GramianSolver::homogeneous_endpoint(const DenseField& u0) const {
  return replay_endpoint(u0, ControlSignal());
}

double GramianSolver::replay_residual(const DenseField& target) const {
  const double scale = space_->sobolev_norm(target, cfg_.k + 1);
  if (scale == 0.0) return 0.0;
  const DenseField end = replay_endpoint(space_->zero(), right_inverse(target));
  return space_->sobolev_norm(end - target, cfg_.k) / scale;
}

GramianSolver assemble_linear_map(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref,
                                  const SimConfig& cfg, const Eigen::MatrixXd& directions, const GramianOptions& opt) {
  return GramianSolver(std::move(space), ref, cfg, directions, opt);
}

DenseField probe_target(const GalerkinSpace& space, int k, unsigned long seed) {
  std::mt19937_64 rng(seed);
  return space.from_field(random_field(space.cutoff(), k, 1.0, rng));
}

GramianSolver refine_until_stall(std::shared_ptr<const GalerkinSpace> space, const ReferenceTrajectory& ref,
                                 const SimConfig& cfg, const Eigen::MatrixXd& directions, const GramianOptions& opt,
                                 std::vector<RefinementRecord>* history) {
  const DenseField probe = probe_target(*space, cfg.k, opt.probe_seed);
  GramianOptions o = opt;
  GramianSolver best(space, ref, cfg, directions, o);
  double prev = best.replay_residual(probe);
  if (history) history->push_back({o.segments, prev});
  for (int r = 0; r < opt.max_refinements; ++r) {
    o.segments *= 2;
    GramianSolver next(space, ref, cfg, directions, o);
    const double res = next.replay_residual(probe);
    if (history) history->push_back({o.segments, res});
    const bool stalled = std::abs(prev - res) < opt.stall * prev;
    best = std::move(next);
    prev = res;
    if (stalled) break;
  }
  return best;
}

}  // namespace torusctl
