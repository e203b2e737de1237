#include "ohs/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ohs/error.hpp"

namespace ohs {

BaglandSolution::BaglandSolution(double mass) : M(mass) {
  if (!(mass > 0.0)) throw Error(ErrorCode::InvalidInput, "Bagland mass must be positive");
}

// The indicator is read as 1_[0,M](mu / (1+t)), which keeps M^1 = M for all t.
double bagland_density(const BaglandSolution& sol, double mu, double t) {
  const double s = 1.0 + t;
  return mu <= sol.support(t) ? 2.0 / (sol.M * s * s) : 0.0;
}

double bagland_moment(const BaglandSolution& sol, double r, double t) {
  const double s = 1.0 + t;
  return 2.0 * std::pow(sol.M * s, r) / ((r + 1.0) * s);
}

double bagland_cell_average(const BaglandSolution& sol, const SizeGrid& grid, std::size_t i,
                            double t) {
  const double lo = grid.edges()[i];
  const double hi = grid.edges()[i + 1];
  const double covered = std::clamp(sol.support(t), lo, hi) - lo;
  const double s = 1.0 + t;
  return 2.0 / (sol.M * s * s) * covered / (hi - lo);
}

State project_bagland(std::shared_ptr<const SizeGrid> grid, const BaglandSolution& sol, double t) {
  State state = State::empty(grid, t);
  const auto edges = grid->edges();
  const auto x = grid->midpoints();
  const auto w = grid->widths();
  const double c = bagland_density(sol, 0.0, t);
  const double top = sol.support(t);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double hi = std::min(edges[i + 1], top);
    if (!(hi > edges[i])) continue;
    const double cell_mass = c * 0.5 * (hi * hi - edges[i] * edges[i]);
    state.xi[i] = cell_mass / (x[i] * w[i]);
  }
  return state;
}

double l1_error(const State& state, const BaglandSolution& sol) {
  const auto w = state.grid->widths();
  double err = 0.0;
  for (std::size_t i = 0; i < state.xi.size(); ++i) {
    err += std::abs(state.xi[i] - bagland_cell_average(sol, *state.grid, i, state.t)) * w[i];
  }
  return err;
}

double brute_force_weak_rhs(const std::vector<State>& states, const KernelSpec& kernel,
                            const TestFunction& test) {
  if (states.size() < 2) return 0.0;
  std::vector<double> rates;
  rates.reserve(states.size());
  for (const State& s : states) {
    const auto& grid = *s.grid;
    double rate = 0.0;
    for (std::size_t j = 0; j < s.xi.size(); ++j) {
      for (std::size_t i = j + 1; i < s.xi.size(); ++i) {
        const double mu = grid.midpoint(i);
        const double nu = grid.midpoint(j);
        const double phi1 = nu * test.derivative(mu) - test.value(nu);
        rate += phi1 * eval(kernel, mu, nu) * s.xi[i] * s.xi[j] * grid.width(i) * grid.width(j);
      }
    }
    rates.push_back(rate);
  }
  double integral = 0.0;
  for (std::size_t k = 1; k < states.size(); ++k) {
    integral += 0.5 * (states[k].t - states[k - 1].t) * (rates[k] + rates[k - 1]);
  }
  return integral;
}

}  // namespace ohs
