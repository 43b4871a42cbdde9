#pragma once

#include <array>
#include <span>
#include <vector>

#include "bgk/grid.hpp"
#include "bgk/moments.hpp"

namespace bgk {

// Discrete constraint rows row_k(j) = h_j phi_k(v_j) dv for phi = (1, v, v^2/2),
// together with the 3x3 Gram matrix C C^T.
struct ConstraintMatrix {
  std::array<std::vector<double>, 3> rows;
  std::array<std::array<double, 3>, 3> gram;
};

// Weights below eta * max(h) are floored; this also sanitizes non-positive
// entries coming from underflowed Gaussian tails.
inline constexpr double kWeightFloor = 1e-14;

ConstraintMatrix build_constraints(std::span<const double> h, const VelocityGrid& grid);

// Closest array to f in the (1/h)-weighted 2-norm whose discrete moments
// equal target exactly. Throws SingularGram on a degenerate grid.
std::vector<double> weighted_l2_correct(std::span<const double> f, std::span<const double> h,
                                        const MomentSet& target, const VelocityGrid& grid);

// Specialization f = h = M: scales a sampled equilibrium so its discrete
// moments match target while staying multiplicatively close to 1.
std::vector<double> correct_maxwellian(std::span<const double> m, const MomentSet& target,
                                       const VelocityGrid& grid);

// Correction of a transported distribution, weighted by the corrected equilibrium.
std::vector<double> correct_transported(std::span<const double> f_tilde,
                                        std::span<const double> m_corrected,
                                        const MomentSet& target, const VelocityGrid& grid);

}  // namespace bgk
