#pragma once

#include <algorithm>
#include <cmath>

#include "bgk/errors.hpp"

namespace bgk {

enum class Boundary { Periodic, FreeFlow };

// Uniform spatial mesh with cell centers x_i = x_min + (i + 1/2) dx.
// center(i) is valid for any integer i, so ghost positions extend the lattice.
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 1;
  Boundary boundary = Boundary::Periodic;

  double dx() const { return (x_max - x_min) / n_cells; }
  double length() const { return x_max - x_min; }
  double center(long i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
  double left_edge(long i) const { return x_min + static_cast<double>(i) * dx(); }

  // Map an arbitrary integer index onto a real cell per the boundary rule.
  int image(long i) const {
    if (boundary == Boundary::Periodic) {
      long r = i % n_cells;
      if (r < 0) r += n_cells;
      return static_cast<int>(r);
    }
    return static_cast<int>(std::clamp(i, 0L, static_cast<long>(n_cells - 1)));
  }
};

// Uniform velocity lattice with n_v + 1 nodes v_j = v_min + j dv.
// Node j owns the interval [v_j - dv/2, v_j + dv/2], so the lattice covers
// [v_min - dv/2, v_max + dv/2] without gaps or overlap.
struct VelocityGrid {
  double v_min = -1.0;
  double dv = 1.0;
  int n_v = 2;

  int n_nodes() const { return n_v + 1; }
  double node(int j) const { return v_min + j * dv; }
  double v_max() const { return node(n_v); }
  double cover_lo() const { return v_min - 0.5 * dv; }
  double cover_hi() const { return v_max() + 0.5 * dv; }

  double max_abs_node() const { return std::max(std::abs(v_min), std::abs(v_max())); }

  void validate() const {
    if (!(dv > 0)) throw ValidationError("velocity grid: dv must be positive");
    if (n_v < 2) throw ValidationError("velocity grid: need at least 3 nodes");
  }
};

}  // namespace bgk
