#include "bgk/reference_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "bgk/parallel.hpp"
#include "bgk/reconstruction.hpp"

namespace bgk {

namespace {

// Modified-minmod x-slopes per (cell, node). Free-flow neighbors clamp to the
// boundary cell, which zeroes the boundary slopes through the limiter.
std::vector<double> x_slopes(const std::vector<double>& f, const VelocityGrid& g,
                             const SpatialGrid& sp, double theta, int threads) {
  const int n = sp.n_cells;
  const int nn = g.n_nodes();
  std::vector<double> slope(f.size());
  const double dx = sp.dx();
  parallel_for(n, threads, [&](int i) {
    const size_t row = static_cast<size_t>(i) * nn;
    const size_t rm = static_cast<size_t>(sp.image(static_cast<long>(i) - 1)) * nn;
    const size_t rp = static_cast<size_t>(sp.image(static_cast<long>(i) + 1)) * nn;
    for (int j = 0; j < nn; ++j) {
      const double fm = f[rm + j], fc = f[row + j], fp = f[rp + j];
      slope[row + j] =
          modified_minmod(theta, (fc - fm) / dx, (fp - fc) / dx, (fp - fm) / (2.0 * dx));
    }
  });
  return slope;
}

}  // namespace

std::vector<double> shifted_field(const std::vector<double>& f, const VelocityGrid& g,
                                  const SpatialGrid& sp, double theta, double dt, int threads) {
  const int n = sp.n_cells;
  const int nn = g.n_nodes();
  if (f.size() != static_cast<size_t>(n) * nn)
    throw GridMismatch("shifted_field: matrix shape mismatch");
  const double dx = sp.dx();
  const std::vector<double> slope = x_slopes(f, g, sp, theta, threads);
  const bool periodic = sp.boundary == Boundary::Periodic;

  auto value = [&](long i, int j) -> double {
    return f[static_cast<size_t>(sp.image(i)) * nn + j];
  };
  auto slp = [&](long i, int j) -> double {
    if (!periodic && (i < 0 || i >= n)) return 0.0;  // constant ghost state
    return slope[static_cast<size_t>(sp.image(i)) * nn + j];
  };

  std::vector<double> out(f.size());
  parallel_for(n, threads, [&](int i) {
    for (int j = 0; j < nn; ++j) {
      const double pos = static_cast<double>(i) - g.node(j) * dt / dx;
      long m = static_cast<long>(std::floor(pos));
      double th = pos - static_cast<double>(m);
      if (th >= 1.0) {
        m += 1;
        th -= 1.0;
      }
      const double a1 = (1.0 - (2.0 * th - 1.0) * (2.0 * th - 1.0)) / 8.0;
      out[static_cast<size_t>(i) * nn + j] = (1.0 - th) * value(m, j) + th * value(m + 1, j) +
                                             dx * a1 * (slp(m, j) - slp(m + 1, j));
    }
  });
  return out;
}

namespace {

void relax_and_commit(GlobalGridState& s, std::vector<double> f_tilde, double dt,
                      const SolverConfig& cfg, int relax_order,
                      std::vector<double>* f_tilde_out) {
  const int n = s.space.n_cells;
  const int nn = s.grid.n_nodes();
  std::vector<double> next(f_tilde.size());
  std::vector<double> eq(nn);
  // Serial loop: the per-cell work is a handful of O(nn) passes and the
  // shifted-field kernels above carry the parallel load.
  for (int i = 0; i < n; ++i) {
    const size_t row = static_cast<size_t>(i) * nn;
    const std::span<const double> ft(&f_tilde[row], nn);
    const MomentSet m = discrete_moments(ft, s.grid);
    try {
      maxwellian_into(m, s.grid, eq);
      const double eps = collision_time(m, cfg.gas);
      const double lambda = relax_order == 2 ? 2.0 * dt / (3.0 * eps) : dt / eps;
      const double inv = 1.0 / (1.0 + lambda);
      for (int j = 0; j < nn; ++j) next[row + j] = (ft[j] + lambda * eq[j]) * inv;
    } catch (const Error& e) {
      throw StepFailure("relax", i, e.what());
    }
  }
  if (f_tilde_out) *f_tilde_out = std::move(f_tilde);
  s.f_prev = std::move(s.f);
  s.f = std::move(next);
  s.time += dt;
  s.step_index += 1;
}

}  // namespace

void classical_step(GlobalGridState& s, double dt, const SolverConfig& cfg,
                    std::vector<double>* f_tilde_out) {
  std::vector<double> ft = shifted_field(s.f, s.grid, s.space, cfg.theta, dt, cfg.threads);
  relax_and_commit(s, std::move(ft), dt, cfg, 1, f_tilde_out);
}

void classical_step_bdf2(GlobalGridState& s, double dt, const SolverConfig& cfg,
                         std::vector<double>* f_tilde_out) {
  if (s.f_prev.size() != s.f.size())
    throw ValidationError("classical_step_bdf2: no history level available");
  std::vector<double> ft = shifted_field(s.f, s.grid, s.space, cfg.theta, dt, cfg.threads);
  const std::vector<double> ft2 =
      shifted_field(s.f_prev, s.grid, s.space, cfg.theta, 2.0 * dt, cfg.threads);
  for (size_t k = 0; k < ft.size(); ++k) ft[k] = (4.0 * ft[k] - ft2[k]) / 3.0;
  relax_and_commit(s, std::move(ft), dt, cfg, 2, f_tilde_out);
}

StepDiagnostics collect_diagnostics(const GlobalGridState& s) {
  StepDiagnostics d;
  d.step = s.step_index;
  d.t = s.time;
  const int nn = s.grid.n_nodes();
  const double dx = s.space.dx();
  double mass = 0.0, mom = 0.0, en = 0.0;
  double min_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.space.n_cells; ++i) {
    const MomentSet m = discrete_moments({&s.f[static_cast<size_t>(i) * nn], static_cast<size_t>(nn)}, s.grid);
    mass += m.rho;
    mom += m.momentum;
    en += m.energy;
  }
  for (double v : s.f) min_f = std::min(min_f, v);
  d.mass = mass * dx;
  d.momentum = mom * dx;
  d.energy = en * dx;
  d.min_f = min_f;
  d.min_nv = d.max_nv = s.grid.n_v;
  d.mean_nv = s.grid.n_v;
  return d;
}

RunSummary run_reference(GlobalGridState& s, double t_final, const SolverConfig& cfg) {
  cfg.validate();
  if (!(t_final > s.time)) throw ValidationError("t_final must exceed the current time");
  if (!(s.dt > 0)) {
    if (!(s.grid.max_abs_node() > 0)) throw ZeroVelocityGrid("all velocity nodes are zero");
    s.dt = cfg.cfl * s.space.dx() / s.grid.max_abs_node();
  }

  const auto wall_start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.dt = s.dt;
  summary.steps.push_back(collect_diagnostics(s));

  while (true) {
    const double remaining = t_final - s.time;
    if (remaining <= 1e-12 * s.dt) break;
    double dt = s.dt;
    bool partial = false;
    if (remaining < s.dt * (1.0 + 1e-9)) {
      dt = remaining;
      partial = remaining < s.dt * (1.0 - 1e-9);
    }
    const bool first_order = cfg.order == 1 || s.step_index == 0 || partial || s.f_prev.empty();
    if (first_order)
      classical_step(s, dt, cfg);
    else
      classical_step_bdf2(s, dt, cfg);
    summary.steps.push_back(collect_diagnostics(s));
  }

  const auto wall_end = std::chrono::steady_clock::now();
  summary.wall_seconds = std::chrono::duration<double>(wall_end - wall_start).count();

  const StepDiagnostics& first = summary.steps.front();
  double nv_acc = 0.0;
  double min_f = std::numeric_limits<double>::infinity();
  for (const StepDiagnostics& d : summary.steps) {
    nv_acc += d.mean_nv;
    min_f = std::min(min_f, d.min_f);
    auto drift = [](double now, double init) {
      return std::abs(now - init) / std::max(std::abs(init), 1e-300);
    };
    summary.max_rel_drift_mass = std::max(summary.max_rel_drift_mass, drift(d.mass, first.mass));
    summary.max_rel_drift_momentum =
        std::max(summary.max_rel_drift_momentum, drift(d.momentum, first.momentum));
    summary.max_rel_drift_energy =
        std::max(summary.max_rel_drift_energy, drift(d.energy, first.energy));
  }
  summary.mean_nv_time = nv_acc / static_cast<double>(summary.steps.size());
  summary.mean_nv_final = summary.steps.back().mean_nv;
  summary.min_f = min_f;
  return summary;
}

}  // namespace bgk
