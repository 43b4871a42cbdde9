#pragma once

#include <span>
#include <vector>

#include "bgk/gas.hpp"
#include "bgk/grid.hpp"

namespace bgk {

// Conserved densities of one cell: mass, momentum, total energy.
// U and RT are always derived, never stored.
struct MomentSet {
  double rho = 0.0;
  double momentum = 0.0;
  double energy = 0.0;

  double velocity() const { return momentum / rho; }
};

// RT = (2E - rho U^2) / (d_v rho). Throws NonPositiveDensity / NonPositiveTemperature.
double rt_temperature(const MomentSet& m);

// Gaussian equilibrium sharing the moments of m, sampled at the grid nodes.
std::vector<double> maxwellian(const MomentSet& m, const VelocityGrid& grid);
void maxwellian_into(const MomentSet& m, const VelocityGrid& grid, std::span<double> out);

// Midpoint-rule moments; summed in ascending node order for determinism.
// May return rho <= 0; the caller validates.
MomentSet discrete_moments(std::span<const double> f, const VelocityGrid& grid);

// Relaxation time for the collision term.
double collision_time(const MomentSet& m, const GasParams& gas);

}  // namespace bgk
