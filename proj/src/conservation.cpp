#include "bgk/conservation.hpp"

#include <algorithm>
#include <cmath>

namespace bgk {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

// Lower-triangular Cholesky factor; false if the matrix is not positive definite.
bool cholesky3(const Mat3& a, Mat3& l) {
  l = {};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return true;
}

Vec3 cholesky_solve(const Mat3& l, const Vec3& b) {
  Vec3 y{};
  for (int i = 0; i < 3; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
    y[i] = s / l[i][i];
  }
  Vec3 x{};
  for (int i = 2; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < 3; ++k) s -= l[k][i] * x[k];
    x[i] = s / l[i][i];
  }
  return x;
}

double norm1(const Mat3& a) {
  double n = 0;
  for (int j = 0; j < 3; ++j) {
    double c = 0;
    for (int i = 0; i < 3; ++i) c += std::abs(a[i][j]);
    n = std::max(n, c);
  }
  return n;
}

// Solves G w = r for the SPD Gram matrix. Diagonal scaling keeps the
// factorization well conditioned across velocity scales; two refinement
// passes push the residual near machine precision so corrected moments
// match their targets to round-off.
Vec3 solve_gram(const Mat3& g, const Vec3& r) {
  Vec3 d{};
  for (int k = 0; k < 3; ++k) {
    if (!(g[k][k] > 0)) throw SingularGram("gram matrix has a non-positive diagonal");
    d[k] = 1.0 / std::sqrt(g[k][k]);
  }
  Mat3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = g[i][j] * d[i] * d[j];

  Mat3 l{};
  if (!cholesky3(s, l)) throw SingularGram("gram matrix is not positive definite");

  Mat3 sinv{};
  for (int k = 0; k < 3; ++k) {
    Vec3 e{};
    e[k] = 1.0;
    Vec3 col = cholesky_solve(l, e);
    for (int i = 0; i < 3; ++i) sinv[i][k] = col[i];
  }
  const double rcond = 1.0 / (norm1(s) * norm1(sinv));
  if (!(rcond >= 1e-13)) throw SingularGram("gram matrix numerically singular, rcond < 1e-13");

  auto scaled_solve = [&](const Vec3& rhs) {
    Vec3 b{rhs[0] * d[0], rhs[1] * d[1], rhs[2] * d[2]};
    Vec3 y = cholesky_solve(l, b);
    return Vec3{y[0] * d[0], y[1] * d[1], y[2] * d[2]};
  };

  Vec3 w = scaled_solve(r);
  for (int pass = 0; pass < 2; ++pass) {
    Vec3 res{};
    for (int i = 0; i < 3; ++i) {
      double s_i = r[i];
      for (int j = 0; j < 3; ++j) s_i -= g[i][j] * w[j];
      res[i] = s_i;
    }
    Vec3 dw = scaled_solve(res);
    for (int i = 0; i < 3; ++i) w[i] += dw[i];
  }
  return w;
}

std::vector<double> floored_weights(std::span<const double> h) {
  double hmax = 0;
  for (double x : h) hmax = std::max(hmax, x);
  if (!(hmax > 0)) throw SingularGram("all correction weights are non-positive");
  const double floor_value = kWeightFloor * hmax;
  std::vector<double> out(h.size());
  for (size_t j = 0; j < h.size(); ++j) out[j] = std::max(h[j], floor_value);
  return out;
}

}  // namespace

ConstraintMatrix build_constraints(std::span<const double> h, const VelocityGrid& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(h.size()) != n) throw GridMismatch("build_constraints: weight length mismatch");
  ConstraintMatrix c;
  for (auto& row : c.rows) row.resize(n);
  for (int j = 0; j < n; ++j) {
    const double v = grid.node(j);
    c.rows[0][j] = h[j] * grid.dv;
    c.rows[1][j] = h[j] * v * grid.dv;
    c.rows[2][j] = h[j] * 0.5 * v * v * grid.dv;
  }
  c.gram = {};
  for (int j = 0; j < n; ++j) {
    const double v = grid.node(j);
    const double w = h[j] * h[j] * grid.dv * grid.dv;
    const double phi[3] = {1.0, v, 0.5 * v * v};
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) c.gram[a][b] += w * phi[a] * phi[b];
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < a; ++b) c.gram[a][b] = c.gram[b][a];
  return c;
}

std::vector<double> weighted_l2_correct(std::span<const double> f, std::span<const double> h,
                                        const MomentSet& target, const VelocityGrid& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(f.size()) != n || static_cast<int>(h.size()) != n)
    throw GridMismatch("weighted_l2_correct: array length mismatch");

  const std::vector<double> hf = floored_weights(h);

  // The Gram system is solved in a velocity basis centered at the weight
  // centroid: the raw basis (1, v, v^2/2) becomes numerically dependent when
  // the lattice sits far from v = 0 relative to its width. The centered basis
  // is an exact triangular change of variables, so matched moments carry back.
  double wsum = 0.0, wv = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w2 = hf[j] * hf[j];
    wsum += w2;
    wv += w2 * grid.node(j);
  }
  const double c0 = wv / wsum;

  Mat3 gram{};
  for (int j = 0; j < n; ++j) {
    const double u = grid.node(j) - c0;
    const double w = hf[j] * hf[j] * grid.dv * grid.dv;
    const double phi[3] = {1.0, u, 0.5 * u * u};
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) gram[a][b] += w * phi[a] * phi[b];
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < a; ++b) gram[a][b] = gram[b][a];

  // The residual C (f o 1/h) cancels h exactly, so compute it as plain
  // moments, then shift into the centered basis.
  const MomentSet m = discrete_moments(f, grid);
  const Vec3 r{target.rho - m.rho, target.momentum - m.momentum, target.energy - m.energy};
  const Vec3 rc{r[0], r[1] - c0 * r[0], r[2] - c0 * r[1] + 0.5 * c0 * c0 * r[0]};
  const Vec3 w = solve_gram(gram, rc);

  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double u = grid.node(j) - c0;
    const double lam = w[0] + w[1] * u + w[2] * 0.5 * u * u;
    out[j] = f[j] + hf[j] * hf[j] * grid.dv * lam;
  }
  return out;
}

std::vector<double> correct_maxwellian(std::span<const double> m, const MomentSet& target,
                                       const VelocityGrid& grid) {
  return weighted_l2_correct(m, m, target, grid);
}

std::vector<double> correct_transported(std::span<const double> f_tilde,
                                        std::span<const double> m_corrected,
                                        const MomentSet& target, const VelocityGrid& grid) {
  return weighted_l2_correct(f_tilde, m_corrected, target, grid);
}

}  // namespace bgk
