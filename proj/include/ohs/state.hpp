#pragma once

#include <memory>
#include <vector>

#include "ohs/grid.hpp"

namespace ohs {

/// Cell-averaged density over a shared grid plus the mass that has left through mu = R.
struct State {
  std::shared_ptr<const SizeGrid> grid;
  double t = 0.0;
  std::vector<double> xi;
  double gel_mass = 0.0;
  /// Cumulative mass added back by clamping roundoff negatives to zero.
  double clamped_mass = 0.0;

  static State empty(std::shared_ptr<const SizeGrid> grid, double t = 0.0);

  std::size_t size() const { return xi.size(); }

  /// Throws NumericalFailure on non-finite entries or a grid/density size mismatch.
  void check_finite() const;
};

}  // namespace ohs
