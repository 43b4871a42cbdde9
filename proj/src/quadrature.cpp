#include "bgk/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bgk {

double Trapezoid::signed_area() const {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point& p = vertex[i];
    const Point& q = vertex[(i + 1) % 4];
    a += p.x * q.v - q.x * p.v;
  }
  return 0.5 * a;
}

double polygon_integral_signed(const LinearPoly2& p, std::span<const Point> poly) {
  const size_t n = poly.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const double dy = b.v - a.v;
    if (dy == 0.0) continue;  // horizontal sides do not contribute
    const double dx = b.x - a.x;
    total += dy * (p.c00 * (a.x + 0.5 * dx) +
                   0.5 * p.c10 * (a.x * a.x + a.x * dx + dx * dx / 3.0) +
                   p.c01 * (a.x * a.v + 0.5 * (a.x * dy + a.v * dx) + dx * dy / 3.0));
  }
  return total;
}

double trapezoid_integral(const LinearPoly2& p, const Trapezoid& t) {
  if (t.signed_area() < 0.0) {
    std::array<Point, 4> rev{t.vertex[3], t.vertex[2], t.vertex[1], t.vertex[0]};
    return polygon_integral_signed(p, rev);
  }
  return polygon_integral_signed(p, t.vertex);
}

int clip_band_to_cell(const ShearedBand& band, const Rect& cell, std::array<Trapezoid, 6>& out) {
  const double va = std::max(band.v_lo, cell.v_lo);
  const double vb = std::min(band.v_hi, cell.v_hi);
  if (!(vb > va)) return 0;

  const double tol =
      1e-14 * std::max({std::abs(band.v_lo), std::abs(band.v_hi), band.v_hi - band.v_lo});

  // Breakpoints where a slanted band edge crosses a vertical cell edge.
  std::array<double, 6> bp;
  int nbp = 0;
  bp[nbp++] = va;
  if (band.shear > 0.0) {
    const double edges[2] = {cell.x_lo, cell.x_hi};
    const double bounds[2] = {band.x_l, band.x_r};
    for (double e : edges)
      for (double b : bounds) {
        const double v = (b - e) / band.shear;
        if (v > va + tol && v < vb - tol) bp[nbp++] = v;
      }
  }
  bp[nbp++] = vb;
  std::sort(bp.begin(), bp.begin() + nbp);

  const double s = band.shear;
  auto x_lo = [&](double v) { return std::max(band.x_l - s * v, cell.x_lo); };
  auto x_hi = [&](double v) { return std::min(band.x_r - s * v, cell.x_hi); };

  int count = 0;
  for (int i = 0; i + 1 < nbp; ++i) {
    const double lo = bp[i], hi = bp[i + 1];
    if (!(hi - lo > tol)) continue;
    const double vm = 0.5 * (lo + hi);
    if (!(x_hi(vm) - x_lo(vm) > 0.0)) continue;
    out[count++] = Trapezoid{{Point{x_lo(lo), lo}, Point{x_hi(lo), lo}, Point{x_hi(hi), hi},
                              Point{x_lo(hi), hi}}};
  }
  return count;
}

std::vector<Trapezoid> clip_band_to_cell(const ShearedBand& band, const Rect& cell) {
  std::array<Trapezoid, 6> buf;
  const int n = clip_band_to_cell(band, cell, buf);
  return std::vector<Trapezoid>(buf.begin(), buf.begin() + n);
}

namespace {

// One boundary traversal shared by the three polynomials of a patch.
// The trapezoids from clip_band_to_cell are counterclockwise by construction.
void accumulate_trap3(const LinearPoly2& p, const LinearPoly2& q, const LinearPoly2& r,
                      const Trapezoid& t, BandMoments& acc) {
  for (int i = 0; i < 4; ++i) {
    const Point& a = t.vertex[i];
    const Point& b = t.vertex[(i + 1) % 4];
    const double dy = b.v - a.v;
    if (dy == 0.0) continue;
    const double dx = b.x - a.x;
    const double g0 = a.x + 0.5 * dx;
    const double g1 = 0.5 * (a.x * a.x + a.x * dx + dx * dx / 3.0);
    const double g2 = a.x * a.v + 0.5 * (a.x * dy + a.v * dx) + dx * dy / 3.0;
    acc.p += dy * (p.c00 * g0 + p.c10 * g1 + p.c01 * g2);
    acc.q += dy * (q.c00 * g0 + q.c10 * g1 + q.c01 * g2);
    acc.r += dy * (r.c00 * g0 + r.c10 * g1 + r.c01 * g2);
  }
}

}  // namespace

BandMoments integrate_over_band(const PolyField& field, const ShearedBand& band) {
  const SpatialGrid& sp = field.space();
  const double dx = sp.dx();
  const double reach_lo = band.x_l - band.shear * band.v_hi;
  const double reach_hi = band.x_r - band.shear * band.v_lo;
  const long i0 = static_cast<long>(std::floor((reach_lo - sp.x_min) / dx));
  const long i1 = static_cast<long>(std::floor((reach_hi - sp.x_min) / dx));

  BandMoments acc;
  std::array<Trapezoid, 6> buf;
  for (long ii = i0; ii <= i1; ++ii) {
    const PolyField::CellView view = field.view(ii);
    const PolyCell& pc = *view.cell;
    const VelocityGrid& g = pc.grid;
    if (band.v_hi <= g.cover_lo() || band.v_lo >= g.cover_hi()) continue;

    const int k0 = std::clamp(
        static_cast<int>(std::floor((std::max(band.v_lo, g.cover_lo()) - g.cover_lo()) / g.dv)),
        0, g.n_v);
    const int k1 = std::clamp(
        static_cast<int>(std::floor((std::min(band.v_hi, g.cover_hi()) - g.cover_lo()) / g.dv)),
        0, g.n_v);

    const double cx = view.x_center;
    Rect cell{cx - 0.5 * dx, cx + 0.5 * dx, 0.0, 0.0};
    for (int k = k0; k <= k1; ++k) {
      const double vk = g.node(k);
      cell.v_lo = vk - 0.5 * g.dv;
      cell.v_hi = vk + 0.5 * g.dv;
      const int np = clip_band_to_cell(band, cell, buf);
      if (np == 0) continue;

      const double fc = pc.f[k];
      const LinearPoly2 p{fc - pc.fx[k] * cx - pc.fv[k] * vk, pc.fx[k], pc.fv[k]};
      const LinearPoly2 q{vk * fc - pc.qx[k] * cx - pc.qv[k] * vk, pc.qx[k], pc.qv[k]};
      const LinearPoly2 r{vk * vk * fc - pc.rx[k] * cx - pc.rv[k] * vk, pc.rx[k], pc.rv[k]};
      for (int t = 0; t < np; ++t) accumulate_trap3(p, q, r, buf[t], acc);
    }
  }
  return acc;
}

}  // namespace bgk
