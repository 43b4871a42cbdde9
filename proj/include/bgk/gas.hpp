#pragma once

#include "bgk/errors.hpp"

namespace bgk {

// Relaxation time: either a fixed epsilon or the density/temperature law
// tau = C * T^omega / rho.
struct EpsilonModel {
  enum class Kind { Constant, TauLaw };

  Kind kind = Kind::Constant;
  double value = 1.0;     // Constant: epsilon
  double coeff = 0.0;     // TauLaw: C
  double exponent = 0.0;  // TauLaw: omega

  static EpsilonModel constant(double eps) {
    if (!(eps > 0)) throw ValidationError("epsilon must be positive");
    EpsilonModel m;
    m.kind = Kind::Constant;
    m.value = eps;
    return m;
  }

  static EpsilonModel tau_law(double c, double omega) {
    if (!(c > 0)) throw ValidationError("tau-law coefficient must be positive");
    EpsilonModel m;
    m.kind = Kind::TauLaw;
    m.coeff = c;
    m.exponent = omega;
    return m;
  }
};

struct GasParams {
  double R = 1.0;  // gas constant
  static constexpr int d_v = 1;
  EpsilonModel epsilon;
};

}  // namespace bgk
