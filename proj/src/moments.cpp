#include "bgk/moments.hpp"

#include <cmath>
#include <numbers>

namespace bgk {

double rt_temperature(const MomentSet& m) {
  if (!(m.rho > 0)) throw NonPositiveDensity("density must be positive, got " + std::to_string(m.rho));
  const double u = m.momentum / m.rho;
  const double rt = (2.0 * m.energy - m.rho * u * u) / (GasParams::d_v * m.rho);
  if (!(rt > 0)) throw NonPositiveTemperature("RT must be positive, got " + std::to_string(rt));
  return rt;
}

void maxwellian_into(const MomentSet& m, const VelocityGrid& grid, std::span<double> out) {
  if (static_cast<int>(out.size()) != grid.n_nodes())
    throw GridMismatch("maxwellian: output length does not match grid");
  const double rt = rt_temperature(m);
  const double u = m.velocity();
  const double amp = m.rho / std::sqrt(2.0 * std::numbers::pi * rt);
  const double inv2rt = 1.0 / (2.0 * rt);
  for (int j = 0; j < grid.n_nodes(); ++j) {
    const double w = grid.node(j) - u;
    out[j] = amp * std::exp(-w * w * inv2rt);
  }
}

std::vector<double> maxwellian(const MomentSet& m, const VelocityGrid& grid) {
  std::vector<double> out(grid.n_nodes());
  maxwellian_into(m, grid, out);
  return out;
}

MomentSet discrete_moments(std::span<const double> f, const VelocityGrid& grid) {
  if (static_cast<int>(f.size()) != grid.n_nodes())
    throw GridMismatch("discrete_moments: value length does not match grid");
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int j = 0; j < grid.n_nodes(); ++j) {
    const double v = grid.node(j);
    s0 += f[j];
    s1 += v * f[j];
    s2 += 0.5 * v * v * f[j];
  }
  return {s0 * grid.dv, s1 * grid.dv, s2 * grid.dv};
}

double collision_time(const MomentSet& m, const GasParams& gas) {
  if (gas.epsilon.kind == EpsilonModel::Kind::Constant) return gas.epsilon.value;
  const double t = rt_temperature(m) / gas.R;
  return gas.epsilon.coeff * std::pow(t, gas.epsilon.exponent) / m.rho;
}

}  // namespace bgk
