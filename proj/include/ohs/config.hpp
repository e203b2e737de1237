#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ohs/grid.hpp"
#include "ohs/initial_condition.hpp"
#include "ohs/kernels.hpp"

namespace ohs {

enum class Scheme { Euler, Heun };

struct GridSpec {
  GridKind kind = GridKind::Uniform;
  double R = 8.0;
  std::size_t N = 256;
  std::optional<double> q;
};

struct MomentOptions {
  std::vector<double> orders{2.0, 3.0};
  std::vector<double> truncation_thresholds;
};

struct SweepSpec {
  std::vector<double> cutoffs;
  double epsilon = 1e-2;
  /// Cell width held fixed across cutoffs (N = R / resolution).
  double resolution = 1.0 / 32.0;
};

/// Tolerances for the `check` subcommand.
struct CheckOptions {
  double residual_tolerance = 0.05;
  double weak_form_lambda_fraction = 0.5;
  double bookkeeping_tolerance = 1e-10;
};

struct SimConfig {
  KernelSpec kernel;
  GridSpec grid;
  InitialConditionSpec initial_condition = ic::Bagland{1.0};
  double t_end = 1.0;
  double cfl = 0.5;
  double record_cadence = 0.01;
  MomentOptions moments;
  double epsilon = 1e-2;
  Scheme scheme = Scheme::Euler;
  /// Defaults to 1e-2 * t_end.
  std::optional<double> dt_max;
  std::size_t max_steps = 50'000'000;
  std::optional<SweepSpec> sweep;
  CheckOptions check;

  /// Throws InvalidInput on any inconsistent field.
  void validate() const;
  double resolved_dt_max() const;
};

}  // namespace ohs
