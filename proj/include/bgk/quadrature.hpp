#pragma once

#include <array>
#include <span>
#include <vector>

#include "bgk/grid.hpp"
#include "bgk/reconstruction.hpp"

namespace bgk {

// p(x, v) = c00 + c10 x + c01 v in absolute coordinates.
struct LinearPoly2 {
  double c00 = 0.0, c10 = 0.0, c01 = 0.0;
};

struct Point {
  double x = 0.0, v = 0.0;
};

// Quadrilateral with horizontal top/bottom sides; vertices counterclockwise.
// Degenerate triangles and zero-height slabs are valid inputs.
struct Trapezoid {
  std::array<Point, 4> vertex;
  double signed_area() const;
};

// Backward-transport image of an x-interval over a velocity band:
// { (x, v) : x_l - s v <= x <= x_r - s v, v_lo <= v <= v_hi } with shear s >= 0.
struct ShearedBand {
  double x_l = 0.0, x_r = 1.0;
  double v_lo = 0.0, v_hi = 1.0;
  double shear = 0.0;
};

struct Rect {
  double x_lo = 0.0, x_hi = 1.0;
  double v_lo = 0.0, v_hi = 1.0;
};

// Divergence-theorem boundary integral of p over a closed polygon; the sign
// follows the vertex orientation (positive for counterclockwise).
double polygon_integral_signed(const LinearPoly2& p, std::span<const Point> poly);

// Exact integral of p over the trapezoid; orientation is normalized to
// counterclockwise first.
double trapezoid_integral(const LinearPoly2& p, const Trapezoid& t);

// Decomposition of band ∩ cell into trapezoids with horizontal top/bottom
// sides, split at every v where a slanted band edge crosses a vertical cell
// edge. Pieces tile the intersection; empty result if it is empty.
std::vector<Trapezoid> clip_band_to_cell(const ShearedBand& band, const Rect& cell);

// Fixed-buffer variant used in hot loops; returns the piece count (<= 5).
int clip_band_to_cell(const ShearedBand& band, const Rect& cell, std::array<Trapezoid, 6>& out);

// Integrals of the piecewise polynomials f, v f, v^2 f over one band.
struct BandMoments {
  double p = 0.0, q = 0.0, r = 0.0;
};

// Sums exact patch integrals of the field's P/Q/R polynomials over band ∩ cell
// for every overlapped phase cell; parts of the band outside the field's
// velocity coverage contribute zero. Accumulation order is fixed (ascending
// spatial index, then ascending velocity node).
BandMoments integrate_over_band(const PolyField& field, const ShearedBand& band);

}  // namespace bgk
