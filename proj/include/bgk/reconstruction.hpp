#pragma once

#include <span>
#include <vector>

#include "bgk/field.hpp"
#include "bgk/grid.hpp"

namespace bgk {

// Argument of smaller magnitude; ties go to a.
double minmod(double a, double b);

// MM(MM(theta d-, theta d+), d_central); non-oscillatory for theta in [1, 2].
double modified_minmod(double theta, double d_minus, double d_plus, double d_central);

// Weights of the conservative sliding-average evaluation between two cells,
// valid for theta in [0, 1).
double shift_alpha(int ell, double theta);
double shift_beta(int ell, double theta);

// Q(x_i + theta dx) = sum_ell dx^ell (alpha_ell L[ell] + beta_ell R[ell]).
// L/R hold the derivative coefficients of the left/right cell polynomials;
// up to three coefficients are supported.
double conservative_shift_eval(std::span<const double> left, std::span<const double> right,
                               double theta, double dx);

// Per-cell degree-1 polynomials for f, v f and v^2 f about the phase-cell
// centers. Center values of v f and v^2 f are v_k f_k and v_k^2 f_k.
struct PolyCell {
  VelocityGrid grid;
  std::vector<double> f;
  std::vector<double> fx, fv;  // slopes of f in x and v
  std::vector<double> qx, qv;  // slopes of v f
  std::vector<double> rx, rv;  // slopes of v^2 f
};

// Piecewise-polynomial phase-space field over the spatial mesh. view() maps
// any integer spatial index onto a geometry-translated cell: periodic wrap
// or free-flow clamp (ghost copies of the boundary cell).
class PolyField {
 public:
  PolyField() = default;
  PolyField(SpatialGrid space, std::vector<PolyCell> cells)
      : space_(space), cells_(std::move(cells)) {}

  const SpatialGrid& space() const { return space_; }
  int n_cells() const { return static_cast<int>(cells_.size()); }
  const PolyCell& cell(int i) const { return cells_[i]; }

  struct CellView {
    double x_center;
    const PolyCell* cell;
  };
  CellView view(long i) const { return {space_.center(i), &cells_[space_.image(i)]}; }

 private:
  SpatialGrid space_;
  std::vector<PolyCell> cells_;
};

// Average of a piecewise-linear-in-v reconstruction over
// [center - half_width, center + half_width]; zero outside grid coverage.
double piecewise_linear_average(const VelocityGrid& grid, std::span<const double> values,
                                std::span<const double> slopes, double center, double half_width);

// Builds the polynomial field: v-slopes from modified minmod within each cell
// (zero-extension past the lattice ends), then x-slopes from modified minmod
// of conservative neighbor evaluations at this cell's nodes.
PolyField build_poly_field(const DistributionField& f, const SpatialGrid& space, double theta,
                           int threads = 1);

}  // namespace bgk
