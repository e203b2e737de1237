#include "ohs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace ohs {

std::vector<double> drift_velocity(const State& state, const KernelTable& table) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  const std::size_t n = state.xi.size();
  std::vector<double> mass(n);
  for (std::size_t j = 0; j < n; ++j) mass[j] = x[j] * state.xi[j] * w[j];

  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double* row = table.row(k);
    double sum = 0.0;
    for (std::size_t j = 0; j <= k; ++j) sum += row[j] * mass[j];
    v[k] = sum;
  }
  return v;
}

std::vector<double> drift_velocity(const State& state, const KernelSpec& kernel) {
  return drift_velocity(state, KernelTable(kernel, *state.grid));
}

std::vector<double> loss_rate(const State& state, const KernelTable& table) {
  const auto x = state.grid->midpoints();
  const std::size_t n = state.xi.size();
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) u[i] = (x[i + 1] - x[i]) * state.xi[i];

  std::vector<double> loss(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double* row = table.row(j);
    double sum = 0.0;
    for (std::size_t i = j; i + 1 < n; ++i) sum += row[i] * u[i];
    loss[j] = sum;
  }
  return loss;
}

std::vector<double> loss_rate(const State& state, const KernelSpec& kernel) {
  return loss_rate(state, KernelTable(kernel, *state.grid));
}

RhsParts rhs(const State& state, const KernelTable& table) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  const std::size_t n = state.xi.size();

  RhsParts parts;
  parts.velocity = drift_velocity(state, table);
  parts.loss = loss_rate(state, table);
  parts.flux.resize(n);
  parts.dxi.resize(n);
  for (std::size_t k = 0; k < n; ++k) parts.flux[k] = parts.velocity[k] * state.xi[k];
  double inflow = 0.0;  // nothing enters through size 0
  for (std::size_t i = 0; i < n; ++i) {
    parts.dxi[i] = -(parts.flux[i] - inflow) / w[i] - state.xi[i] * parts.loss[i];
    inflow = parts.flux[i];
  }
  parts.boundary_outflow_rate = x[n - 1] * parts.flux[n - 1];

  for (double d : parts.dxi) {
    if (!std::isfinite(d)) throw Error(ErrorCode::NumericalFailure, "non-finite right-hand side");
  }
  return parts;
}

RhsParts rhs(const State& state, const KernelSpec& kernel) {
  return rhs(state, KernelTable(kernel, *state.grid));
}

double stable_dt(const State& state, const RhsParts& parts, double cfl, double dt_max) {
  const auto w = state.grid->widths();
  double rate = 0.0;
  for (std::size_t i = 0; i < parts.velocity.size(); ++i) {
    rate = std::max(rate, parts.velocity[i] / w[i] + parts.loss[i]);
  }
  if (!(rate > 0.0)) return dt_max;
  return std::min(cfl / rate, dt_max);
}

namespace {

void clamp_negatives(State& state) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  for (std::size_t i = 0; i < state.xi.size(); ++i) {
    if (state.xi[i] < 0.0) {
      state.clamped_mass += x[i] * (-state.xi[i]) * w[i];
      state.xi[i] = 0.0;
    }
  }
}

}  // namespace

State step(const State& state, const KernelTable& table, double dt, Scheme scheme,
           const RhsParts* parts) {
  if (!(dt >= 0.0)) throw Error(ErrorCode::InvalidInput, "time step must be nonnegative");
  std::optional<RhsParts> own;
  if (!parts) {
    own = rhs(state, table);
    parts = &*own;
  }

  State next = state;
  const std::size_t n = state.xi.size();
  for (std::size_t i = 0; i < n; ++i) next.xi[i] = state.xi[i] + dt * parts->dxi[i];

  if (scheme == Scheme::Euler) {
    next.gel_mass = state.gel_mass + dt * parts->boundary_outflow_rate;
  } else {
    // Heun: average of the Euler slope and the slope at the Euler predictor.
    const RhsParts second = rhs(next, table);
    for (std::size_t i = 0; i < n; ++i) {
      next.xi[i] = state.xi[i] + 0.5 * dt * (parts->dxi[i] + second.dxi[i]);
    }
    next.gel_mass = state.gel_mass +
                    0.5 * dt * (parts->boundary_outflow_rate + second.boundary_outflow_rate);
  }
  next.t = state.t + dt;
  clamp_negatives(next);
  next.check_finite();
  return next;
}

State step(const State& state, const KernelSpec& kernel, double dt, Scheme scheme) {
  return step(state, KernelTable(kernel, *state.grid), dt, scheme);
}

RunResult run(const SimConfig& config, bool keep_snapshots) {
  config.validate();
  const auto& g = config.grid;
  auto grid = std::make_shared<const SizeGrid>(SizeGrid::build(g.kind, g.R, g.N, g.q));
  State state = project_initial(grid, config.initial_condition);
  const KernelTable table(config.kernel, *grid);

  RunResult result;
  result.series.orders = config.moments.orders;
  result.series.thresholds = config.moments.truncation_thresholds;
  const auto record = [&](const State& s) {
    result.series.records.push_back(result.series.make_record(s));
    if (keep_snapshots) result.snapshots.push_back(s);
  };
  record(state);

  const double rho0 = moment(state, 1.0);
  const double dt_max = config.resolved_dt_max();
  const double t_end = config.t_end;
  std::size_t next_index = 1;
  const auto next_record_time = [&] {
    const double t = static_cast<double>(next_index) * config.record_cadence;
    return t < t_end * (1.0 - 1e-12) ? t : t_end;
  };

  try {
    while (state.t < t_end) {
      if (result.steps >= config.max_steps) {
        throw Error(ErrorCode::NumericalFailure, "step budget exhausted before t_end");
      }
      const double target = next_record_time();
      const RhsParts parts = rhs(state, table);
      double dt = stable_dt(state, parts, config.cfl, dt_max);
      // Compare the rounded sum so a step landing on the target by rounding still records.
      const bool hits = state.t + dt >= target;
      if (hits) dt = target - state.t;
      state = step(state, table, dt, config.scheme, &parts);
      ++result.steps;
      if (state.clamped_mass > kClampTolerance * rho0) {
        throw Error(ErrorCode::PositivityViolation, "clamped mass exceeds 1e-8 of the initial mass");
      }
      if (hits) {
        state.t = target;
        record(state);
        ++next_index;
      }
    }
  } catch (const Error& e) {
    result.failure = e.code();
    result.failure_message = e.what();
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace ohs
