#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "ohs/grid.hpp"
#include "ohs/state.hpp"

namespace ohs {

namespace ic {

/// Constant density on [a, b] carrying total_mass.
struct UniformOn {
  double a = 0.0;
  double b = 1.0;
  double total_mass = 1.0;
};

/// All mass in one cell.
struct CellSpike {
  std::size_t index = 0;
  double total_mass = 1.0;
};

/// Piecewise-constant density: values[k] on [edges[k], edges[k+1]].
struct Table {
  std::vector<double> edges;
  std::vector<double> values;
};

/// Constant-kernel explicit-solution data (2/M) on [0, M].
struct Bagland {
  double M = 1.0;
};

}  // namespace ic

using InitialConditionSpec = std::variant<ic::UniformOn, ic::CellSpike, ic::Table, ic::Bagland>;

/// Total mass integral of mu * density for the initial condition, independent of any grid.
double initial_mass(const InitialConditionSpec& spec);

/// Mass-exact projection: each cell receives the exact mass of the initial density restricted
/// to it, stored as xi_i = (cell mass) / (midpoint_i * width_i).
/// Throws SupportOutsideDomain or NonpositiveMass.
State project_initial(std::shared_ptr<const SizeGrid> grid, const InitialConditionSpec& spec);

}  // namespace ohs
