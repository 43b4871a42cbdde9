#pragma once

#include <vector>

#include "bgk/grid.hpp"
#include "bgk/moments.hpp"

namespace bgk {

// One spatial cell's distribution values on its own velocity lattice.
struct CellDistribution {
  VelocityGrid grid;
  std::vector<double> values;  // n_nodes entries
};

using DistributionField = std::vector<CellDistribution>;
using MomentField = std::vector<MomentSet>;

inline MomentField field_moments(const DistributionField& f) {
  MomentField out;
  out.reserve(f.size());
  for (const auto& cell : f) out.push_back(discrete_moments(cell.values, cell.grid));
  return out;
}

}  // namespace bgk
