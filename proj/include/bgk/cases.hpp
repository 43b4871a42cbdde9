#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bgk/field.hpp"
#include "bgk/lvg_solver.hpp"
#include "bgk/reference_solver.hpp"

namespace bgk {

// One benchmark setup: domain, gas, macroscopic initial fields and the
// shared velocity interval used by the global-grid solver (and by the
// adaptive solver's first step when init mode is SharedGrid).
struct TestCase {
  std::string name;
  double x_min = 0.0, x_max = 1.0;
  Boundary boundary = Boundary::Periodic;
  GasParams gas;
  std::function<double(double)> rho0, u0, temp0;  // physical temperature
  double v_lo = -10.0, v_hi = 10.0;
  int nv0 = 60;
  double t_final = 1.0;
  int default_nx = 100;
  double default_cfl = 2.0;
  double width_anchor = 1.0;  // thermal-width ladder anchor for the adaptive lattices

  enum class LvgInit { SharedGrid, LocalRule } lvg_init = LvgInit::SharedGrid;

  MomentSet initial_moments(double x) const {
    const double rho = rho0(x), u = u0(x), rt = gas.R * temp0(x);
    return {rho, rho * u, 0.5 * rho * (u * u + rt)};
  }
};

// Smooth periodic flow: equilibrium data with a two-bump velocity profile.
TestCase case_accuracy();
// Low-density shock tube with the tau collision law; C selects the regime.
TestCase case_riemann(double tau_coeff);
// Two blast waves driven by extreme temperature jumps.
TestCase case_blast();

TestCase make_case(const std::string& name);

SpatialGrid make_spatial_grid(const TestCase& tc, int nx);

// Equilibrium initial data per cell. SharedGrid samples every cell on the
// case's global interval; LocalRule applies the adaptive grid rule to the
// initial macroscopic fields over the same stencil the stepper uses.
SolverState initial_lvg_state(const TestCase& tc, int nx, int nv0, const SolverConfig& cfg);
GlobalGridState initial_reference_state(const TestCase& tc, int nx);

// Relative L1 distance with the fine field averaged pairwise onto the coarse mesh.
double rel_l1_error(std::span<const double> coarse, std::span<const double> fine);
double convergence_rate(double e_coarse, double e_fine);

std::vector<double> density_profile(const DistributionField& f);
std::vector<double> density_profile(const GlobalGridState& s);

}  // namespace bgk
