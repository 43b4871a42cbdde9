#pragma once

#include <vector>

namespace bgk {

// Per-step bookkeeping recorded by the drivers (the t = 0 entry describes the
// initial data).
struct StepDiagnostics {
  long step = 0;
  double t = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double min_f = 0.0;
  int min_nv = 0;
  int max_nv = 0;
  double mean_nv = 0.0;
};

struct RunSummary {
  std::vector<StepDiagnostics> steps;
  double dt = 0.0;
  double wall_seconds = 0.0;
  double mean_nv_time = 0.0;   // average over steps of the per-step cell mean
  double mean_nv_final = 0.0;  // cell mean at the final time
  double min_f = 0.0;

  // Largest |total - initial total| / |initial total| over the run.
  double max_rel_drift_mass = 0.0;
  double max_rel_drift_momentum = 0.0;
  double max_rel_drift_energy = 0.0;
};

}  // namespace bgk
