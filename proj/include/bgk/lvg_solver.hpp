#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bgk/diagnostics.hpp"
#include "bgk/field.hpp"
#include "bgk/gas.hpp"
#include "bgk/quadrature.hpp"
#include "bgk/reconstruction.hpp"

namespace bgk {

struct SolverConfig {
  double cfl = 2.0;
  double alpha = 10.0;     // coverage half-width in thermal-speed units
  double beta = 0.5;       // dv <= beta sqrt(RT_min)
  double tail_tol = 1e-6;  // relative threshold for tail-driven grid extension
  double theta = 1.5;      // limiter parameter
  int order = 2;           // 1: implicit Euler, 2: two-level multistep
  GasParams gas;
  int threads = 1;  // 1 = serial reference path, 0 = OpenMP default

  // Anchor of the quarter-decade ladder the local thermal width snaps onto
  // before dv = beta * width is formed (see build_local_grid); 0 disables
  // snapping and uses dv = beta sqrt(RT_min) directly.
  double width_anchor = 1.0;

  void validate() const;
};

// Field state advanced by step(); prev_poly holds the previous level's
// polynomial field once the run has history (second-order scheme).
struct SolverState {
  SpatialGrid space;
  DistributionField f;
  double time = 0.0;
  double dt = 0.0;  // fixed step; computed from the CFL number on the initial grids
  long step_index = 0;
  std::optional<PolyField> prev_poly;
};

// dt = cfl dx / max |v| over the initial grids.
double time_step_from_cfl(const SolverConfig& cfg, const DistributionField& f, double dx);

// Transported moments per cell: band integrals of P/Q/R over each cell's own
// current-grid slabs (two-level combination when prev is given).
MomentField predict_moments(const PolyField& poly, const PolyField* prev, double dt, int threads);

// New lattice: dv from the stencil's coldest cell, half-width from its hottest,
// centered at the cell's transported mean velocity.
VelocityGrid build_local_grid(const MomentSet& center, std::span<const MomentSet> stencil,
                              const SolverConfig& cfg);

// Grid growth while the transported value just outside either end stays above
// tol relative to the current maximum. predict(v, dv) returns the transported
// value at a candidate node; grown values are recorded per end.
struct TailExtension {
  VelocityGrid grid;
  std::vector<double> prepended;  // values at nodes added below, in order of addition
  std::vector<double> appended;   // values at nodes added above, in order of addition
};
template <class Predict>
TailExtension extend_grid_by_tail(const VelocityGrid& grid, Predict&& predict, double max_value,
                                  double tol);

// Transport onto the given new grids (with tail extension) plus the corrected
// moments at the new level.
std::pair<DistributionField, MomentField> transport_and_remoment(
    const PolyField& poly, const PolyField* prev, const std::vector<VelocityGrid>& new_grids,
    double dt, const SolverConfig& cfg);

// Equilibrium and transported distributions corrected to share the target
// moments exactly.
struct CorrectedPair {
  std::vector<double> equilibrium;
  std::vector<double> transported;
};
CorrectedPair conservation_correct(std::span<const double> f_tilde,
                                   std::span<const double> maxwellian_raw, const MomentSet& target,
                                   const VelocityGrid& grid);

// f = (g + lambda M) / (1 + lambda) with lambda = dt/eps (order 1) or
// 2 dt / (3 eps) (order 2).
std::vector<double> implicit_relax(std::span<const double> g, std::span<const double> m, double dt,
                                   double eps, int order);

// One full step at the state's fixed dt (order from cfg; first step of an
// order-2 run uses the first-order update).
void step(SolverState& state, const SolverConfig& cfg);

// Step with an explicit dt; force_first_order selects the first-order update
// regardless of cfg.order (used for startup and the final partial step).
void step_with_dt(SolverState& state, const SolverConfig& cfg, double dt, bool force_first_order);

StepDiagnostics collect_diagnostics(const SolverState& state);

// Advances to t_final with the fixed CFL step; the last step shrinks to land
// exactly on t_final.
RunSummary run(SolverState& state, double t_final, const SolverConfig& cfg);

// --- implementation of the template ---

template <class Predict>
TailExtension extend_grid_by_tail(const VelocityGrid& grid, Predict&& predict, double max_value,
                                  double tol) {
  TailExtension ext{grid, {}, {}};
  const int cap = 4 * grid.n_v;
  int added = 0;
  double maxv = max_value;
  bool grew = true;
  while (grew) {
    grew = false;
    while (maxv > 0) {
      const double vc = ext.grid.v_min - ext.grid.dv;
      const double val = predict(vc, ext.grid.dv);
      if (!(val / maxv > tol)) break;
      if (++added > cap) throw RunawayGrid("tail extension exceeded 4x the base node count");
      ext.prepended.push_back(val);
      ext.grid.v_min = vc;
      ext.grid.n_v += 1;
      maxv = std::max(maxv, val);
      grew = true;
    }
    while (maxv > 0) {
      const double vc = ext.grid.v_max() + ext.grid.dv;
      const double val = predict(vc, ext.grid.dv);
      if (!(val / maxv > tol)) break;
      if (++added > cap) throw RunawayGrid("tail extension exceeded 4x the base node count");
      ext.appended.push_back(val);
      ext.grid.n_v += 1;
      maxv = std::max(maxv, val);
      grew = true;
    }
  }
  return ext;
}

}  // namespace bgk
