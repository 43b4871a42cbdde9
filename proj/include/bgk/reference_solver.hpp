#pragma once

#include <vector>

#include "bgk/diagnostics.hpp"
#include "bgk/field.hpp"
#include "bgk/lvg_solver.hpp"

namespace bgk {

// Classical scheme sharing one velocity lattice across all spatial cells.
struct GlobalGridState {
  SpatialGrid space;
  VelocityGrid grid;
  std::vector<double> f;       // n_cells x n_nodes, row-major
  std::vector<double> f_prev;  // previous level, empty until history exists
  double time = 0.0;
  double dt = 0.0;
  long step_index = 0;

  double& at(int i, int j) { return f[static_cast<size_t>(i) * grid.n_nodes() + j]; }
  double at(int i, int j) const { return f[static_cast<size_t>(i) * grid.n_nodes() + j]; }
};

// Backward evaluation of every node's characteristic foot via the
// conservative sliding-average formula on limited linear reconstructions.
// Per node the spatial sum of the result equals that of the input (periodic).
std::vector<double> shifted_field(const std::vector<double>& f, const VelocityGrid& grid,
                                  const SpatialGrid& space, double theta, double dt, int threads);

// Implicit-Euler update on the shared lattice; f_tilde_out, when given,
// receives the transported field before relaxation.
void classical_step(GlobalGridState& s, double dt, const SolverConfig& cfg,
                    std::vector<double>* f_tilde_out = nullptr);

// Two-level multistep update (4/3, -1/3 combination of the shifted levels).
void classical_step_bdf2(GlobalGridState& s, double dt, const SolverConfig& cfg,
                         std::vector<double>* f_tilde_out = nullptr);

StepDiagnostics collect_diagnostics(const GlobalGridState& s);

// Fixed-step driver mirroring the adaptive solver's run(): order-2 runs start
// with one first-order step, and the final step shrinks onto t_final.
RunSummary run_reference(GlobalGridState& s, double t_final, const SolverConfig& cfg);

}  // namespace bgk
