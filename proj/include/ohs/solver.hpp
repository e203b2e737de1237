#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ohs/config.hpp"
#include "ohs/error.hpp"
#include "ohs/kernel_table.hpp"
#include "ohs/moments.hpp"
#include "ohs/state.hpp"

namespace ohs {

/// Pieces of the semi-discrete right-hand side. Edge k is the right edge of cell k.
struct RhsParts {
  std::vector<double> velocity;
  std::vector<double> loss;
  std::vector<double> flux;
  double boundary_outflow_rate = 0.0;
  /// d xi_i / dt.
  std::vector<double> dxi;
};

/// v_k = sum_{j <= k} x_j K(x_k, x_j) xi_j w_j at the right edge of cell k.
std::vector<double> drift_velocity(const State& state, const KernelTable& table);
std::vector<double> drift_velocity(const State& state, const KernelSpec& kernel);

/// L_j = sum_{j <= i <= N-2} (x_{i+1} - x_i) K(x_i, x_j) xi_i; zero for the last cell.
std::vector<double> loss_rate(const State& state, const KernelTable& table);
std::vector<double> loss_rate(const State& state, const KernelSpec& kernel);

/// Upwind fluxes and d xi/dt. With these loss weights the discrete mass identity
/// sum_i x_i (d xi_i/dt) w_i + boundary_outflow_rate = 0 holds up to roundoff.
RhsParts rhs(const State& state, const KernelTable& table);
RhsParts rhs(const State& state, const KernelSpec& kernel);

/// cfl / max_i(v_i / w_i + L_i), or dt_max when every rate vanishes.
double stable_dt(const State& state, const RhsParts& parts, double cfl, double dt_max);

/// Advances one step. Roundoff negatives are clamped to zero and their mass is added to
/// state.clamped_mass. `parts`, when given, must be rhs(state) and is reused as stage one.
State step(const State& state, const KernelTable& table, double dt, Scheme scheme,
           const RhsParts* parts = nullptr);
State step(const State& state, const KernelSpec& kernel, double dt, Scheme scheme);

struct RunResult {
  MomentSeries series;
  State final_state;
  /// Recorded states (same times as series.records) when snapshots were requested.
  std::vector<State> snapshots;
  std::size_t steps = 0;
  /// Set when the run stopped early; series holds the records made up to the failure.
  std::optional<ErrorCode> failure;
  std::string failure_message;

  bool ok() const { return !failure.has_value(); }
  Trajectory trajectory(const KernelSpec& kernel) const { return {kernel, snapshots}; }
};

/// Integrates from t = 0 to t_end with adaptive dt, recording at every multiple of the
/// cadence and at t_end. Throws InvalidInput for bad configs; numerical failures are
/// returned in RunResult::failure.
RunResult run(const SimConfig& config, bool keep_snapshots = false);

/// Fails a run once cumulative clamped mass exceeds this fraction of the initial mass.
inline constexpr double kClampTolerance = 1e-8;

}  // namespace ohs
