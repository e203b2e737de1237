#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ohs/config.hpp"
#include "ohs/moments.hpp"
#include "ohs/solver.hpp"

namespace ohs {

/// First time the gel fraction exceeds epsilon, interpolated linearly between the bracketing
/// records. Empty when the threshold is never crossed.
std::optional<double> gelation_time(const MomentSeries& series, double epsilon);

struct SweepRow {
  double R = 0.0;
  std::size_t N = 0;
  std::optional<double> t_loss;
  double gel_fraction_final = 0.0;
  /// Empty on success.
  std::string error;
  /// Full run output (no snapshots); absent when the row failed before running.
  std::optional<RunResult> result;

  bool ok() const { return error.empty(); }
};

struct BoundEvaluation {
  double R = 0.0;
  double r = 0.0;
  double delta = 0.0;
  double Mr_delta = 0.0;
  double bound = 0.0;
};

struct GelationReport {
  double epsilon = 0.0;
  /// Sorted by R.
  std::vector<SweepRow> table;
  std::vector<BoundEvaluation> bound_evaluations;
};

/// base_config on a uniform grid of cutoff R with cells of width ~resolution.
SimConfig sweep_row_config(const SimConfig& base_config, double R, double resolution);

/// Runs base_config once per cutoff with the cell width held at `resolution`
/// (N = round(R / resolution)). Rows run on up to `workers` threads; a failing row is
/// reported in place and the others still complete.
GelationReport cutoff_sweep(const SimConfig& base_config, std::span<const double> cutoffs,
                            double epsilon, double resolution, unsigned workers = 1);

/// delta + (1 / ((beta-1) theta1 rho0^(1-sigma))) * (1 / Mr_delta)^sigma, sigma = (beta-1)/(r-1).
double blowup_bound(double r, double delta, double Mr_delta, double theta1, double beta,
                    double rho0);

/// Blow-up time 1 / (sigma c Q0^sigma) of dQ/dt = c Q^(sigma+1), Q(0) = Q0.
double comparison_ode_blowup(double Q0, double c, double sigma);

/// Least-squares slope of log(values) against times, returned as a decay rate (minus the
/// slope). Nonpositive values are skipped; empty when fewer than two remain.
std::optional<double> fit_exponential_rate(std::span<const double> times,
                                           std::span<const double> values);

struct TailDecayFit {
  double lambda = 0.0;
  /// (t, M_lambda^1(t)) over the window where the mass below lambda stays >= rho0 / 2.
  std::vector<std::pair<double, double>> samples;
  /// Empty when the tail is identically zero over the window.
  std::optional<double> fitted_rate;
  /// theta1 rho0 lambda^(beta-1) / 2.
  double reference_rate = 0.0;
};

/// Diagnostic only. Throws InvalidInput for lambda outside (0, R) and WindowEmpty when the
/// mass below lambda is under rho0 / 2 at every record.
TailDecayFit tail_decay_fit(const Trajectory& run, double lambda, double theta1, double beta);

struct TailPositivity {
  double value = 0.0;
  bool positive = false;
};

TailPositivity tail_positivity(const State& state, double m);

}  // namespace ohs
