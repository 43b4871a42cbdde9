#include "bgk/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "bgk/parallel.hpp"

namespace bgk {

double minmod(double a, double b) { return std::abs(a) <= std::abs(b) ? a : b; }

double modified_minmod(double theta, double d_minus, double d_plus, double d_central) {
  return minmod(minmod(theta * d_minus, theta * d_plus), d_central);
}

namespace {

constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double shift_alpha(int ell, double theta) {
  const double t = 2.0 * theta - 1.0;
  return (1.0 - pow_int(t, ell + 1)) / (pow_int(2.0, ell + 1) * kFactorial[ell + 1]);
}

double shift_beta(int ell, double theta) {
  const double t = 2.0 * theta - 1.0;
  const double sign = (ell % 2 == 0) ? -1.0 : 1.0;  // (-1)^(ell+1)
  return (pow_int(t, ell + 1) - sign) / (pow_int(2.0, ell + 1) * kFactorial[ell + 1]);
}

double conservative_shift_eval(std::span<const double> left, std::span<const double> right,
                               double theta, double dx) {
  if (left.size() != right.size() || left.empty() || left.size() > 3)
    throw UnsupportedDegree("conservative_shift_eval: supported coefficient counts are 1..3");
  if (!(theta >= 0.0 && theta < 1.0))
    throw ValidationError("conservative_shift_eval: theta must lie in [0, 1)");
  double acc = 0.0, scale = 1.0;
  for (size_t ell = 0; ell < left.size(); ++ell) {
    const int l = static_cast<int>(ell);
    acc += scale * (shift_alpha(l, theta) * left[ell] + shift_beta(l, theta) * right[ell]);
    scale *= dx;
  }
  return acc;
}

double piecewise_linear_average(const VelocityGrid& grid, std::span<const double> values,
                                std::span<const double> slopes, double center, double half_width) {
  const double lo = center - half_width;
  const double hi = center + half_width;
  const double a = std::max(lo, grid.cover_lo());
  const double b = std::min(hi, grid.cover_hi());
  if (!(b > a)) return 0.0;

  int k0 = static_cast<int>(std::floor((a - grid.cover_lo()) / grid.dv));
  int k1 = static_cast<int>(std::floor((b - grid.cover_lo()) / grid.dv));
  k0 = std::clamp(k0, 0, grid.n_v);
  k1 = std::clamp(k1, 0, grid.n_v);

  double integral = 0.0;
  for (int k = k0; k <= k1; ++k) {
    const double vk = grid.node(k);
    const double s0 = std::max(a, vk - 0.5 * grid.dv);
    const double s1 = std::min(b, vk + 0.5 * grid.dv);
    if (!(s1 > s0)) continue;
    const double d1 = s1 - vk, d0 = s0 - vk;
    integral += values[k] * (s1 - s0) + 0.5 * slopes[k] * (d1 * d1 - d0 * d0);
  }
  return integral / (2.0 * half_width);
}

namespace {

// Same integral with the quantity's node value supplied by a getter,
// so v f and v^2 f need not be materialized.
template <class Get>
double piecewise_average_of(const VelocityGrid& grid, Get&& value_at,
                            std::span<const double> slopes, double center, double half_width) {
  const double lo = center - half_width;
  const double hi = center + half_width;
  const double a = std::max(lo, grid.cover_lo());
  const double b = std::min(hi, grid.cover_hi());
  if (!(b > a)) return 0.0;
  int k0 = std::clamp(static_cast<int>(std::floor((a - grid.cover_lo()) / grid.dv)), 0, grid.n_v);
  int k1 = std::clamp(static_cast<int>(std::floor((b - grid.cover_lo()) / grid.dv)), 0, grid.n_v);
  double integral = 0.0;
  for (int k = k0; k <= k1; ++k) {
    const double vk = grid.node(k);
    const double s0 = std::max(a, vk - 0.5 * grid.dv);
    const double s1 = std::min(b, vk + 0.5 * grid.dv);
    if (!(s1 > s0)) continue;
    const double d1 = s1 - vk, d0 = s0 - vk;
    integral += value_at(k) * (s1 - s0) + 0.5 * slopes[k] * (d1 * d1 - d0 * d0);
  }
  return integral / (2.0 * half_width);
}

// v-direction slopes of one quantity with zero-extension past the lattice ends.
template <class Get>
void v_slopes(const VelocityGrid& grid, Get&& a, double theta, std::vector<double>& out) {
  const int n = grid.n_nodes();
  out.resize(n);
  for (int k = 0; k < n; ++k) {
    const double am = k > 0 ? a(k - 1) : 0.0;
    const double ap = k < n - 1 ? a(k + 1) : 0.0;
    out[k] = modified_minmod(theta, (a(k) - am) / grid.dv, (ap - a(k)) / grid.dv,
                             (ap - am) / (2.0 * grid.dv));
  }
}

}  // namespace

PolyField build_poly_field(const DistributionField& f, const SpatialGrid& space, double theta,
                           int threads) {
  const int n = space.n_cells;
  if (static_cast<int>(f.size()) != n)
    throw GridMismatch("build_poly_field: field size does not match spatial grid");
  for (const auto& cd : f)
    if (static_cast<int>(cd.values.size()) != cd.grid.n_nodes())
      throw GridMismatch("build_poly_field: cell value count does not match its grid");

  std::vector<PolyCell> cells(n);

  parallel_for(n, threads, [&](int i) {
    const CellDistribution& cd = f[i];
    PolyCell& pc = cells[i];
    pc.grid = cd.grid;
    pc.f = cd.values;
    auto fval = [&](int k) { return cd.values[k]; };
    auto qval = [&](int k) { return cd.grid.node(k) * cd.values[k]; };
    auto rval = [&](int k) { const double v = cd.grid.node(k); return v * v * cd.values[k]; };
    v_slopes(cd.grid, fval, theta, pc.fv);
    v_slopes(cd.grid, qval, theta, pc.qv);
    v_slopes(cd.grid, rval, theta, pc.rv);
  });

  const double dx = space.dx();
  parallel_for(n, threads, [&](int i) {
    PolyCell& pc = cells[i];
    const PolyCell& lft = cells[space.image(static_cast<long>(i) - 1)];
    const PolyCell& rgt = cells[space.image(static_cast<long>(i) + 1)];
    const int m = pc.grid.n_nodes();
    pc.fx.resize(m);
    pc.qx.resize(m);
    pc.rx.resize(m);

    auto lq = [&](int k) { return lft.grid.node(k) * lft.f[k]; };
    auto lr = [&](int k) { const double v = lft.grid.node(k); return v * v * lft.f[k]; };
    auto rq = [&](int k) { return rgt.grid.node(k) * rgt.f[k]; };
    auto rr = [&](int k) { const double v = rgt.grid.node(k); return v * v * rgt.f[k]; };

    for (int k = 0; k < m; ++k) {
      const double vk = pc.grid.node(k);
      const double hwl = 0.5 * lft.grid.dv;
      const double hwr = 0.5 * rgt.grid.dv;

      const double fm = piecewise_linear_average(lft.grid, lft.f, lft.fv, vk, hwl);
      const double fp = piecewise_linear_average(rgt.grid, rgt.f, rgt.fv, vk, hwr);
      const double qm = piecewise_average_of(lft.grid, lq, lft.qv, vk, hwl);
      const double qp = piecewise_average_of(rgt.grid, rq, rgt.qv, vk, hwr);
      const double rm = piecewise_average_of(lft.grid, lr, lft.rv, vk, hwl);
      const double rp = piecewise_average_of(rgt.grid, rr, rgt.rv, vk, hwr);

      const double fc = pc.f[k];
      const double qc = vk * fc;
      const double rc = vk * vk * fc;
      pc.fx[k] =
          modified_minmod(theta, (fc - fm) / dx, (fp - fc) / dx, (fp - fm) / (2.0 * dx));
      pc.qx[k] =
          modified_minmod(theta, (qc - qm) / dx, (qp - qc) / dx, (qp - qm) / (2.0 * dx));
      pc.rx[k] =
          modified_minmod(theta, (rc - rm) / dx, (rp - rc) / dx, (rp - rm) / (2.0 * dx));
    }
  });

  return PolyField(space, std::move(cells));
}

}  // namespace bgk
