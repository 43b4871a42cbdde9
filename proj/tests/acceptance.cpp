// Acceptance suite: each criterion runs standalone and prints one PASS/FAIL
// line with its measured numbers. Usage: bgk_acceptance [k ...] with k in
// 1..8; no arguments runs everything.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bgk/cases.hpp"
#include "bgk/conservation.hpp"
#include "bgk/lvg_solver.hpp"
#include "bgk/quadrature.hpp"
#include "bgk/reference_solver.hpp"
#include "support/oracles.hpp"

using namespace bgk;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel_to(double err, double scale) { return err / std::max(std::abs(scale), 1e-300); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. quadrature against refined-midpoint brute force
// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double worst_trap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double v0 = -2.0 + 3.0 * unif(rng);
    const double v1 = v0 + 0.05 + 2.0 * unif(rng);
    const double xl0 = -2.0 + 3.0 * unif(rng);
    const double xl1 = -2.0 + 3.0 * unif(rng);
    const bool triangle = trial % 10 == 0;
    const oracles::TrapSpec spec{v0,  v1,  xl0, xl0 + 0.05 + 2.0 * unif(rng),
                                 xl1, triangle ? xl1 : xl1 + 0.05 + 2.0 * unif(rng)};
    const LinearPoly2 p{1.0 + unif(rng), 0.2 * (unif(rng) - 0.5), 0.2 * (unif(rng) - 0.5)};
    const double want = oracles::trapezoid_integral(p, spec, 4000);
    const double got = trapezoid_integral(p, spec.to_trapezoid());
    worst_trap = std::max(worst_trap, rel_to(std::abs(got - want), want));
  }

  double worst_band = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double xl = -1.0 + 2.0 * unif(rng);
    const ShearedBand band{xl, xl + 0.2 + 1.5 * unif(rng), -1.0 + 1.2 * unif(rng),
                           0.3 + 1.2 * unif(rng), 2.0 * unif(rng)};
    const double cx = band.x_l - 1.0 + 3.0 * unif(rng);
    const double cv = band.v_lo - 0.3 + 1.5 * unif(rng);
    const Rect cell{cx, cx + 0.2 + unif(rng), cv, cv + 0.2 + unif(rng)};
    const LinearPoly2 p{1.0 + unif(rng), 0.2 * (unif(rng) - 0.5), 0.2 * (unif(rng) - 0.5)};

    const double want = oracles::band_cell_integral(p, band, cell, 2000);
    double got = 0.0;
    for (const Trapezoid& t : clip_band_to_cell(band, cell)) got += trapezoid_integral(p, t);
    const double err = std::abs(got - want);
    worst_band = std::max(worst_band, want == 0.0 ? err : rel_to(err, want));
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome out;
  out.pass = worst_trap <= 1e-10 && worst_band <= 1e-10 && seconds < 10.0;
  out.detail = "max rel err: trapezoids " + fmt(worst_trap) + ", band pieces " + fmt(worst_band) +
               ", runtime " + fmt(seconds) + " s (limits 1e-10, 10 s)";
  return out;
}

// ---------------------------------------------------------------------------
// 2. weighted L2 exactness and the bimodal example
// ---------------------------------------------------------------------------

Outcome criterion2() {
  std::mt19937_64 rng(7177);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    // equilibrium-like base with noise and a target a moderate distance from
    // the field's own moments, mirroring how the correction is driven: the
    // lattice resolves the thermal width and covers several of them
    const double dv = 0.05 + 1.95 * unif(rng);
    const double sigma = dv * (1.0 + 3.0 * unif(rng));
    const double u_b = 60.0 * (unif(rng) - 0.5);
    const int half = static_cast<int>(std::ceil(sigma * (5.0 + 7.0 * unif(rng)) / dv));
    const VelocityGrid g{u_b - half * dv, dv, 2 * half};

    const double rt_b = sigma * sigma;
    const double rho_b = 0.1 + 10.0 * unif(rng);
    const MomentSet base{rho_b, rho_b * u_b, 0.5 * rho_b * (u_b * u_b + rt_b)};
    std::vector<double> f = maxwellian(base, g);
    double fmax = 0.0;
    for (double x : f) fmax = std::max(fmax, x);
    for (auto& x : f) x = x * (1.0 + 0.4 * (unif(rng) - 0.5)) + 0.02 * fmax * (unif(rng) - 0.5);

    const MomentSet own = discrete_moments(f, g);
    const double u_own = own.velocity();
    const double rt_own = (2.0 * own.energy - own.rho * u_own * u_own) / own.rho;
    const double rho_t = own.rho * (1.0 + 0.2 * (unif(rng) - 0.5));
    const double u_t = u_own + 0.1 * std::sqrt(rt_b) * (unif(rng) - 0.5);
    const double rt_t = rt_own * (1.0 + 0.4 * (unif(rng) - 0.5));
    if (!(rt_t > 0)) {
      --trial;
      continue;
    }
    const MomentSet target{rho_t, rho_t * u_t, 0.5 * rho_t * (u_t * u_t + rt_t)};
    std::vector<double> h(g.n_nodes());
    maxwellian_into(target, g, h);

    const auto out = weighted_l2_correct(f, h, target, g);
    const MomentSet m = discrete_moments(out, g);
    const double vref = std::max(std::abs(g.v_min), std::abs(g.v_max()));
    worst = std::max(worst, rel_to(std::abs(m.rho - target.rho), target.rho));
    worst = std::max(worst, std::abs(m.momentum - target.momentum) /
                                std::max(std::abs(target.momentum), target.rho * vref));
    worst = std::max(worst, rel_to(std::abs(m.energy - target.energy), target.energy));
  }

  // bimodal profile sampled on the 17-node lattice {-24, -21, ..., 24}
  const VelocityGrid g{-24.0, 3.0, 16};
  std::vector<double> f(g.n_nodes());
  for (int j = 0; j < g.n_nodes(); ++j) {
    const double v = g.node(j);
    f[j] = 0.5 / std::sqrt(4.0 * std::numbers::pi) * std::exp(-(v + 3.0) * (v + 3.0) / 4.0) +
           0.5 / std::sqrt(10.0 * std::numbers::pi) * std::exp(-(v - 3.0) * (v - 3.0) / 10.0);
  }
  const MomentSet target{1.0, 0.0, 6.25};
  const auto h = maxwellian(target, g);
  const auto weighted = weighted_l2_correct(f, h, target, g);
  const MomentSet mw = discrete_moments(weighted, g);
  const double ex_err = std::max({std::abs(mw.rho - 1.0), std::abs(mw.momentum),
                                  std::abs(mw.energy - 6.25) / 6.25});

  const std::vector<double> ones(g.n_nodes(), 1.0);
  const auto unweighted = weighted_l2_correct(f, ones, target, g);
  const double min_w = *std::min_element(weighted.begin(), weighted.end());
  const double min_u = *std::min_element(unweighted.begin(), unweighted.end());

  Outcome out;
  out.pass = worst <= 1e-12 && ex_err <= 1e-13 && min_w >= min_u - 1e-15;
  out.detail = "max rel moment err " + fmt(worst) + " (limit 1e-12); bimodal example err " +
               fmt(ex_err) + "; min weighted " + fmt(min_w) + " >= min unweighted " + fmt(min_u);
  return out;
}

// ---------------------------------------------------------------------------
// 3. conservation over the smooth periodic run
// ---------------------------------------------------------------------------

Outcome criterion3() {
  const TestCase tc = case_accuracy();
  SolverConfig cfg;
  cfg.cfl = 2.4;
  cfg.order = 2;
  cfg.gas = tc.gas;
  cfg.gas.epsilon = EpsilonModel::constant(1e-6);
  cfg.threads = 0;
  cfg.width_anchor = tc.width_anchor;
  SolverState s = initial_lvg_state(tc, 80, 60, cfg);
  const RunSummary sum = run(s, tc.t_final, cfg);
  const double worst = std::max({sum.max_rel_drift_mass, sum.max_rel_drift_momentum,
                                 sum.max_rel_drift_energy});
  Outcome out;
  out.pass = worst <= 1e-9;
  out.detail = "rel drift over " + std::to_string(sum.steps.size() - 1) + " steps: mass " +
               fmt(sum.max_rel_drift_mass) + ", momentum " + fmt(sum.max_rel_drift_momentum) +
               ", energy " + fmt(sum.max_rel_drift_energy) + " (limit 1e-9)";
  return out;
}

// ---------------------------------------------------------------------------
// 4. self-convergence rates on the smooth case
// ---------------------------------------------------------------------------

Outcome criterion4() {
  const TestCase tc = case_accuracy();
  Outcome out;
  out.pass = true;
  std::ostringstream detail;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    std::vector<std::vector<double>> rho;
    for (int nx : {40, 80, 160, 320}) {
      SolverConfig cfg;
      cfg.cfl = 2.4;
      cfg.order = 2;
      cfg.gas = tc.gas;
      cfg.gas.epsilon = EpsilonModel::constant(eps);
      cfg.threads = 0;
      cfg.width_anchor = tc.width_anchor;
      SolverState s = initial_lvg_state(tc, nx, 60, cfg);
      run(s, tc.t_final, cfg);
      rho.push_back(density_profile(s.f));
    }
    const double e1 = rel_l1_error(rho[0], rho[1]);
    const double e2 = rel_l1_error(rho[1], rho[2]);
    const double e3 = rel_l1_error(rho[2], rho[3]);
    const double r12 = convergence_rate(e1, e2);
    const double r23 = convergence_rate(e2, e3);
    detail << "eps=" << fmt(eps) << ": e=(" << fmt(e1) << "," << fmt(e2) << "," << fmt(e3)
           << ") rates=(" << fmt(r12) << "," << fmt(r23) << "); ";
    if (eps == 1e-2) {
      if (!(r23 >= 1.9)) out.pass = false;
    } else {
      if (!(r12 >= 1.3 && r12 <= 1.7)) out.pass = false;
      if (!(r23 >= 1.8 && r23 <= 2.3)) out.pass = false;
    }
  }
  detail << "(need: eps=1e-2 fine rate >= 1.9; others coarse in [1.3,1.7], fine in [1.8,2.3])";
  out.detail = detail.str();
  return out;
}

// ---------------------------------------------------------------------------
// 5. shock-tube agreement with the global-grid solver
// ---------------------------------------------------------------------------

Outcome criterion5() {
  const TestCase tc = case_riemann(1.08e-9);
  SolverConfig cfg;
  cfg.cfl = 2.0;
  cfg.order = 2;
  cfg.gas = tc.gas;
  cfg.threads = 0;
  cfg.width_anchor = tc.width_anchor;

  SolverState lvg = initial_lvg_state(tc, 300, 600, cfg);
  const RunSummary lvg_sum = run(lvg, tc.t_final, cfg);
  const auto rho_l = density_profile(lvg.f);

  GlobalGridState ref = initial_reference_state(tc, 300);
  run_reference(ref, tc.t_final, cfg);
  const auto rho_r = density_profile(ref);

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < rho_l.size(); ++i) {
    num += std::abs(rho_l[i] - rho_r[i]);
    den += std::abs(rho_r[i]);
  }
  const double l1 = num / den;

  Outcome out;
  out.pass = l1 <= 0.02 && lvg_sum.mean_nv_time <= 80.0;
  out.detail = "rel L1 density diff " + fmt(l1) + " (limit 2e-2); mean nodes per cell " +
               fmt(lvg_sum.mean_nv_time) + " over steps / " + fmt(lvg_sum.mean_nv_final) +
               " at t_final (limit 80) vs 601 global";
  return out;
}

// ---------------------------------------------------------------------------
// 6. blast waves: node budget and front positions
// ---------------------------------------------------------------------------

std::vector<int> detect_fronts(const std::vector<double>& rho, double frac) {
  const int n = static_cast<int>(rho.size());
  std::vector<double> jump(n - 1);
  double peak = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    jump[i] = std::abs(rho[i + 1] - rho[i]);
    peak = std::max(peak, jump[i]);
  }
  const double threshold = frac * peak;
  std::vector<int> fronts;
  for (int i = 0; i + 1 < n; ++i) {
    if (jump[i] < threshold) continue;
    const double left = i > 0 ? jump[i - 1] : 0.0;
    const double right = i + 2 < n ? jump[i + 1] : 0.0;
    if (jump[i] >= left && jump[i] >= right) {
      if (!fronts.empty() && i - fronts.back() <= 4) {
        if (jump[i] > jump[fronts.back()]) fronts.back() = i;
      } else {
        fronts.push_back(i);
      }
    }
  }
  return fronts;
}

Outcome criterion6() {
  const TestCase tc = case_blast();
  SolverConfig cfg;
  cfg.cfl = 2.0;
  cfg.order = 2;
  cfg.gas = tc.gas;
  cfg.threads = 0;
  cfg.width_anchor = tc.width_anchor;

  SolverState lvg = initial_lvg_state(tc, 500, tc.nv0, cfg);
  const RunSummary lvg_sum = run(lvg, tc.t_final, cfg);
  const auto rho_l = density_profile(lvg.f);

  GlobalGridState ref = initial_reference_state(tc, 500);
  run_reference(ref, tc.t_final, cfg);
  const auto rho_r = density_profile(ref);

  const auto fronts_l = detect_fronts(rho_l, 0.2);
  const auto fronts_r = detect_fronts(rho_r, 0.2);
  int worst_dist = -1;
  bool matched = fronts_l.size() == fronts_r.size() && !fronts_r.empty();
  for (int fr : fronts_r) {
    int best = 1 << 20;
    for (int fl : fronts_l) best = std::min(best, std::abs(fl - fr));
    worst_dist = std::max(worst_dist, best);
    if (best > 2) matched = false;
  }

  Outcome out;
  out.pass = matched && lvg_sum.mean_nv_time <= 100.0;
  std::ostringstream detail;
  detail << "mean nodes per cell " << fmt(lvg_sum.mean_nv_time) << " over steps / "
         << fmt(lvg_sum.mean_nv_final) << " at t_final (limit 100) vs 3801 global; fronts ref=[";
  for (int f : fronts_r) detail << f << " ";
  detail << "] lvg=[";
  for (int f : fronts_l) detail << f << " ";
  detail << "], worst offset " << worst_dist << " cells (limit 2)";
  out.detail = detail.str();
  return out;
}

// ---------------------------------------------------------------------------
// 7. equilibrium fixed point and the stiff projection limit
// ---------------------------------------------------------------------------

Outcome criterion7() {
  // fixed point, starting from the scheme's own lattice for the state
  SolverConfig cfg;
  cfg.cfl = 2.0;
  cfg.order = 2;
  cfg.gas.R = 1.0;
  cfg.gas.epsilon = EpsilonModel::constant(1e-4);
  SolverState s;
  s.space = SpatialGrid{0.0, 1.0, 16, Boundary::Periodic};
  const MomentSet m0{1.3, 1.3 * 0.4, 0.5 * 1.3 * (0.16 + 0.8)};
  const VelocityGrid g0 = build_local_grid(m0, {&m0, 1}, cfg);
  s.f.assign(16, CellDistribution{g0, maxwellian(m0, g0)});
  s.dt = time_step_from_cfl(cfg, s.f, s.space.dx());
  double fixed_err = 0.0;
  for (int n = 0; n < 2; ++n) {
    step(s, cfg);
    for (const auto& cell : s.f) {
      const auto eq = maxwellian(m0, cell.grid);
      for (int j = 0; j < cell.grid.n_nodes(); ++j)
        fixed_err = std::max(fixed_err, std::abs(cell.values[j] - eq[j]));
    }
  }

  // stiff projection after one step from out-of-equilibrium data
  const TestCase tc = case_accuracy();
  const double eps = 1e-10;
  SolverConfig pc;
  pc.cfl = 2.4;
  pc.order = 1;
  pc.gas = tc.gas;
  pc.gas.epsilon = EpsilonModel::constant(eps);
  SolverState p = initial_lvg_state(tc, 16, 24, pc);
  for (auto& cell : p.f) {
    const MomentSet a{0.5, 0.75, 0.25 * (1.5 * 1.5 + 1.0)};
    const MomentSet b{0.5, -0.75, 0.25 * (1.5 * 1.5 + 1.0)};
    const auto fa = maxwellian(a, cell.grid), fb = maxwellian(b, cell.grid);
    for (int j = 0; j < cell.grid.n_nodes(); ++j) cell.values[j] = fa[j] + fb[j];
  }
  p.dt = time_step_from_cfl(pc, p.f, p.space.dx());
  step(p, pc);
  double proj_err = 0.0;
  for (const auto& cell : p.f) {
    const MomentSet m = discrete_moments(cell.values, cell.grid);
    const auto eq = correct_maxwellian(maxwellian(m, cell.grid), m, cell.grid);
    for (int j = 0; j < cell.grid.n_nodes(); ++j)
      proj_err = std::max(proj_err, std::abs(cell.values[j] - eq[j]));
  }
  const double bound = 10.0 * eps / p.dt;

  Outcome out;
  out.pass = fixed_err <= 1e-10 && proj_err <= bound;
  out.detail = "fixed-point sup error " + fmt(fixed_err) + " (limit 1e-10); projection error " +
               fmt(proj_err) + " <= " + fmt(bound) + " (10 eps/dt)";
  return out;
}

// ---------------------------------------------------------------------------
// 8. node-wise transport conservation of the global-grid solver
// ---------------------------------------------------------------------------

Outcome criterion8() {
  const TestCase tc = case_accuracy();
  double worst = 0.0;
  for (int order : {1, 2}) {
    GlobalGridState s = initial_reference_state(tc, 40);
    SolverConfig cfg;
    cfg.cfl = 2.4;
    cfg.order = order;
    cfg.gas = tc.gas;
    cfg.gas.epsilon = EpsilonModel::constant(1e-4);
    s.dt = cfg.cfl * s.space.dx() / s.grid.max_abs_node();
    const int nn = s.grid.n_nodes();

    for (int n = 0; n < 10; ++n) {
      std::vector<double> col_n(nn, 0.0), col_nm1(nn, 0.0);
      for (int i = 0; i < s.space.n_cells; ++i)
        for (int j = 0; j < nn; ++j) col_n[j] += s.at(i, j);
      const bool two_level = order == 2 && n > 0;
      if (two_level)
        for (int i = 0; i < s.space.n_cells; ++i)
          for (int j = 0; j < nn; ++j) col_nm1[j] += s.f_prev[static_cast<size_t>(i) * nn + j];

      std::vector<double> ft;
      if (two_level)
        classical_step_bdf2(s, s.dt, cfg, &ft);
      else
        classical_step(s, s.dt, cfg, &ft);

      for (int j = 0; j < nn; ++j) {
        double col_ft = 0.0;
        for (int i = 0; i < s.space.n_cells; ++i) col_ft += ft[static_cast<size_t>(i) * nn + j];
        const double expected = two_level ? (4.0 * col_n[j] - col_nm1[j]) / 3.0 : col_n[j];
        worst = std::max(worst,
                         std::abs(col_ft - expected) / std::max(1.0, std::abs(expected)));
      }
    }
  }
  Outcome out;
  out.pass = worst <= 1e-12;
  out.detail = "max node-wise transport identity violation " + fmt(worst) + " (limit 1e-12)";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int a = 1; a < argc; ++a) which.push_back(std::atoi(argv[a]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};

  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8};

  bool all_pass = true;
  for (int k : which) {
    if (k < 1 || k > 8) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    Outcome out;
    try {
      out = criteria[k - 1]();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", k, out.detail.c_str());
    std::fflush(stdout);
    all_pass &= out.pass;
  }
  return all_pass ? 0 : 1;
}
