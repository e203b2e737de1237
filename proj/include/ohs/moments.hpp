#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ohs/kernel_table.hpp"
#include "ohs/kernels.hpp"
#include "ohs/state.hpp"

namespace ohs {

/// sum_i x_i^r xi_i w_i over all cells.
double moment(const State& state, double r);

/// Same sum restricted to cells whose midpoint is >= m.
double truncated_moment(const State& state, double r, double m);

struct MomentRecord {
  double t = 0.0;
  double M0 = 0.0;
  double M1 = 0.0;
  /// Aligned with MomentSeries::orders.
  std::vector<double> higher;
  /// M_m^1 for each MomentSeries::thresholds entry.
  std::vector<double> truncated;
  double gel_mass = 0.0;
  double clamped_mass = 0.0;
};

struct MomentSeries {
  std::vector<double> orders;
  std::vector<double> thresholds;
  std::vector<MomentRecord> records;

  MomentRecord make_record(const State& state) const;
  /// M1 + gel mass of the first record.
  double initial_mass() const;
};

/// Recorded states of one run together with the kernel that produced them.
struct Trajectory {
  KernelSpec kernel;
  std::vector<State> states;
};

struct HolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// (M^r)^(s+1) (M^1)^(-s) <= M^(r+beta-1) with s = (beta-1)/(r-1).
/// Throws DegenerateState when M^1 = 0, InvalidInput when r < 2 or beta <= 1.
HolderResult holder_check(const State& state, double r, double beta);

/// Quadrature of sum_i sum_{j<i} (r x_j x_i^(r-1) - x_j^r) K(x_i,x_j) xi_i xi_j w_i w_j.
double moment_rhs(const State& state, const KernelSpec& kernel, double r);
double moment_rhs(const State& state, const KernelTable& table, double r);
/// moment_rhs together with the sum of the absolute values of its terms.
std::pair<double, double> moment_rhs_with_scale(const State& state, const KernelTable& table,
                                                double r);

struct MomentResidual {
  double max_relative = 0.0;
  /// Per interior record: (t, finite-difference derivative, quadrature).
  std::vector<std::array<double, 3>> samples;
  /// One-sided second-order derivative and the quadrature at the first record.
  double initial_derivative = 0.0;
  double initial_rhs = 0.0;
};

inline constexpr double kResidualFloor = 1e-30;
/// Relative size below which weak-form sides are treated as roundoff zeros.
inline constexpr double kWeakFormRoundoff = 1e-9;

/// Compares centered differences of M^r between recorded states against moment_rhs.
/// Throws InsufficientRecords with fewer than 3 states.
MomentResidual moment_residual(const Trajectory& run, double r);

enum class TestFunctionKind { CappedIdentity, CappedPower };

/// Lipschitz test functions whose derivative is supported on [0, lambda].
struct TestFunction {
  TestFunctionKind kind = TestFunctionKind::CappedIdentity;
  double lambda = 1.0;
  double r = 2.0;
  /// Width of the C^1 blend for CappedPower; defaults to lambda / 10.
  std::optional<double> blend;

  static TestFunction capped_identity(double lambda);
  static TestFunction capped_power(double r, double lambda, std::optional<double> blend = {});

  double value(double mu) const;
  double derivative(double mu) const;
};

struct WeakFormResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Denominator floor used for the residual (roundoff level of the summed terms).
  double floor = kResidualFloor;
};

/// Left: sum phi(x_i) [xi_i(t) - xi_i(0)] w_i. Right: trapezoid in time over the recorded
/// states of sum_i sum_{j<i} (x_j phi'(x_i) - phi(x_j)) K xi_i xi_j w_i w_j.
/// The residual is |L - R| / max(|L|, |R|, floor), where the floor is the larger of 1e-30 and
/// 1e-12 times the absolute size of the summed terms (so two roundoff-level zeros compare equal).
/// Throws UnknownTime when t is not a recorded time.
WeakFormResult weak_form_residual(const Trajectory& run, const TestFunction& test, double t);

/// Instantaneous weak-form integrand at one state, plus the sum of absolute terms.
std::pair<double, double> weak_form_rate(const State& state, const KernelTable& table,
                                         const TestFunction& test);

/// (p, (M^p)^(1/p)) for every requested order, evaluated in log space.
std::vector<std::pair<double, double>> pth_root_diagnostic(const State& state,
                                                           std::span<const double> orders);

}  // namespace ohs
