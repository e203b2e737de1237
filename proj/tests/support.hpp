#pragma once

#include <memory>
#include <random>

#include "ohs/config.hpp"
#include "ohs/grid.hpp"
#include "ohs/state.hpp"

namespace ohs::testing {

inline std::shared_ptr<const SizeGrid> make_grid(GridKind kind, double R, std::size_t N,
                                                 std::optional<double> q = std::nullopt) {
  return std::make_shared<const SizeGrid>(SizeGrid::build(kind, R, N, q));
}

inline std::shared_ptr<const SizeGrid> uniform_grid(double R, std::size_t N) {
  return make_grid(GridKind::Uniform, R, N);
}

inline SimConfig bagland_config(std::size_t N = 1024, double t_end = 1.0, double R = 8.0) {
  SimConfig c;
  c.kernel = KernelSpec{kernel::Constant{1.0}, std::nullopt};
  c.grid = GridSpec{GridKind::Uniform, R, N, std::nullopt};
  c.initial_condition = ic::Bagland{1.0};
  c.t_end = t_end;
  c.record_cadence = 0.01;
  return c;
}

inline SimConfig power_sum_config(double R = 8.0, std::size_t N = 256, double t_end = 2.0) {
  SimConfig c;
  c.kernel = KernelSpec{kernel::PowerSum{1.0, 1.5}, std::nullopt};
  c.grid = GridSpec{GridKind::Uniform, R, N, std::nullopt};
  c.initial_condition = ic::UniformOn{0.5, 1.0, 1.0};
  c.t_end = t_end;
  c.record_cadence = 0.01;
  return c;
}

inline SimConfig mass_conserving_config(double R = 8.0, std::size_t N = 256, double t_end = 1.0) {
  SimConfig c = power_sum_config(R, N, t_end);
  c.kernel = KernelSpec{kernel::MassConservingFamily{1.0, 2.0, Perturbation::HalfSum, 0.5},
                        std::nullopt};
  return c;
}

/// Nonnegative random densities with roughly a third of the cells empty.
inline State random_state(std::shared_ptr<const SizeGrid> grid, std::mt19937& rng) {
  State s = State::empty(grid);
  std::uniform_real_distribution<double> value(0.0, 3.0);
  std::bernoulli_distribution occupied(0.65);
  for (double& x : s.xi) x = occupied(rng) ? value(rng) : 0.0;
  return s;
}

}  // namespace ohs::testing
