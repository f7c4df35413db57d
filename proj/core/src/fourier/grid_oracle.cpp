#include "torusctl/fourier/grid_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace torusctl {

namespace {

struct Grid {
  int n;
  std::vector<double> cos_table;
  std::vector<double> sin_table;

  explicit Grid(int size) : n(size), cos_table(size), sin_table(size) {
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n;
      cos_table[j] = std::cos(th);
      sin_table[j] = std::sin(th);
    }
  }

  std::size_t points() const { return std::size_t(n) * n * n; }

  int phase(const WaveVector& l, int i, int j, int k) const {
    long p = long(l[0]) * i + long(l[1]) * j + long(l[2]) * k;
    p %= n;
    return int(p < 0 ? p + n : p);
  }
};

// Samples u and its Jacobian du_c/dx_m at every grid point.
void sample(const Grid& g, const FieldD& u, std::vector<Vec3d>& val,
            std::vector<std::array<Vec3d, 3>>& jac) {
  val.assign(g.points(), Vec3d{0, 0, 0});
  jac.assign(g.points(), {Vec3d{0, 0, 0}, Vec3d{0, 0, 0}, Vec3d{0, 0, 0}});
  for (const auto& [l, c] : u.modes()) {
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) {
        for (int k = 0; k < g.n; ++k, ++idx) {
          const int ph = g.phase(l, i, j, k);
          const double cs = g.cos_table[ph];
          const double sn = g.sin_table[ph];
          for (int comp = 0; comp < 3; ++comp) {
            val[idx][comp] += c.cos[comp] * cs + c.sin[comp] * sn;
            const double dphase = -c.cos[comp] * sn + c.sin[comp] * cs;
            for (int m = 0; m < 3; ++m) jac[idx][comp][m] += dphase * l[m];
          }
        }
      }
    }
  }
}

int max_wave(const FieldD& u) { return u.max_wavenumber(); }

}  // namespace

int oracle_min_grid(const FieldD& v, const FieldD& w) {
  return 2 * (max_wave(v) + max_wave(w)) + 2;
}

namespace {

FieldD convection_oracle(const FieldD& v, const FieldD& w, int grid_size, bool symmetric) {
  const int need = oracle_min_grid(v, w);
  if (grid_size < need) {
    throw AliasingError("grid size " + std::to_string(grid_size) +
                        " aliases the product; need at least " + std::to_string(need));
  }
  if (v.empty() || w.empty()) return {};

  const Grid g(grid_size);
  const int n = g.n;
  std::vector<Vec3d> vv, wv;
  std::vector<std::array<Vec3d, 3>> vj, wj;
  sample(g, v, vv, vj);
  sample(g, w, wv, wj);

  // f = (v . grad) w, plus (w . grad) v when symmetric
  std::vector<Vec3d> f(g.points());
  for (std::size_t p = 0; p < g.points(); ++p) {
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int m = 0; m < 3; ++m) {
        acc += vv[p][m] * wj[p][c][m];
        if (symmetric) acc += wv[p][m] * vj[p][c][m];
      }
      f[p][c] = acc;
    }
  }

  // Separable DFT restricted to |l|_inf <= K: F(l) = N^-3 sum f(x) e^{-i<l,x>}.
  const int kmax = max_wave(v) + max_wave(w);
  const int span = 2 * kmax + 1;
  using cplx = std::complex<double>;
  auto twiddle = [&](int freq, int j) {
    long p = (long(freq) * j) % n;
    if (p < 0) p += n;
    return cplx(g.cos_table[p], -g.sin_table[p]);
  };

  typename FieldD::Map raw;
  for (int comp = 0; comp < 3; ++comp) {
    // Transform along k, then j, then i.
    std::vector<cplx> a(std::size_t(n) * n * span);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int fk = -kmax; fk <= kmax; ++fk) {
          cplx acc = 0;
          for (int k = 0; k < n; ++k) acc += f[(std::size_t(i) * n + j) * n + k][comp] * twiddle(fk, k);
          a[(std::size_t(i) * n + j) * span + (fk + kmax)] = acc;
        }
    std::vector<cplx> b(std::size_t(n) * span * span);
    for (int i = 0; i < n; ++i)
      for (int fj = -kmax; fj <= kmax; ++fj)
        for (int fk = 0; fk < span; ++fk) {
          cplx acc = 0;
          for (int j = 0; j < n; ++j) acc += a[(std::size_t(i) * n + j) * span + fk] * twiddle(fj, j);
          b[(std::size_t(i) * span + (fj + kmax)) * span + fk] = acc;
        }
    const double norm = 1.0 / (double(n) * n * n);
    for (int fi = -kmax; fi <= kmax; ++fi)
      for (int fj = -kmax; fj <= kmax; ++fj)
        for (int fk = -kmax; fk <= kmax; ++fk) {
          auto l = WaveVector::try_make({fi, fj, fk});
          if (!l || !l->is_canonical()) continue;
          cplx acc = 0;
          for (int i = 0; i < n; ++i) {
            acc += b[(std::size_t(i) * span + (fj + kmax)) * span + (fk + kmax)] * twiddle(fi, i);
          }
          acc *= norm;
          auto& c = raw[*l];
          c.cos[comp] = 2.0 * acc.real();
          c.sin[comp] = -2.0 * acc.imag();
        }
  }
  return FieldD::from_unprojected(std::move(raw));
}

}  // namespace

FieldD q_oracle(const FieldD& v, const FieldD& w, int grid_size) {
  return convection_oracle(v, w, grid_size, true);
}

FieldD b_oracle(const FieldD& u, const FieldD& v, int grid_size) {
  return convection_oracle(u, v, grid_size, false);
}

}  // namespace torusctl
