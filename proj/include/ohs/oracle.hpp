#pragma once

#include <memory>
#include <vector>

#include "ohs/grid.hpp"
#include "ohs/kernels.hpp"
#include "ohs/moments.hpp"
#include "ohs/state.hpp"

namespace ohs {

/// Explicit constant-kernel solution: density 2 / (M (1+t)^2) on [0, M (1+t)].
struct BaglandSolution {
  double M = 1.0;

  explicit BaglandSolution(double mass);

  double support(double t) const { return M * (1.0 + t); }
};

double bagland_density(const BaglandSolution& sol, double mu, double t);

/// 2 (M (1+t))^r / ((r+1)(1+t)).
double bagland_moment(const BaglandSolution& sol, double r, double t);

/// Cell average of the explicit density over cell i.
double bagland_cell_average(const BaglandSolution& sol, const SizeGrid& grid, std::size_t i,
                            double t);

/// Mass-exact projection of the explicit solution at time t (no gel).
State project_bagland(std::shared_ptr<const SizeGrid> grid, const BaglandSolution& sol, double t);

/// sum_i |xi_i - cell average of the explicit density| w_i at state.t.
double l1_error(const State& state, const BaglandSolution& sol);

/// Right side of the weak formulation by plain triple summation over records and cell
/// pairs, evaluating the kernel and the test function at every term. Trapezoid in time.
double brute_force_weak_rhs(const std::vector<State>& states, const KernelSpec& kernel,
                            const TestFunction& test);

}  // namespace ohs
