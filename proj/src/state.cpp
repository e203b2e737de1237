#include "ohs/state.hpp"

#include <cmath>

#include "ohs/error.hpp"

namespace ohs {

State State::empty(std::shared_ptr<const SizeGrid> grid, double t) {
  State s;
  s.xi.assign(grid->size(), 0.0);
  s.grid = std::move(grid);
  s.t = t;
  return s;
}

void State::check_finite() const {
  if (!grid || grid->size() != xi.size()) {
    throw Error(ErrorCode::NumericalFailure, "state density does not match its grid");
  }
  for (double v : xi) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NumericalFailure, "non-finite density");
  }
  if (!std::isfinite(gel_mass) || !std::isfinite(t)) {
    throw Error(ErrorCode::NumericalFailure, "non-finite time or gel mass");
  }
}

}  // namespace ohs
