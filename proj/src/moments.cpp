#include "ohs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ohs/error.hpp"

namespace ohs {

namespace {

double power(double x, double r) {
  if (r == 0.0) return 1.0;
  if (r == 1.0) return x;
  if (r == 2.0) return x * x;
  return std::pow(x, r);
}

// Index of the state closest to time t, or -1 when none is within a relative 1e-9.
std::ptrdiff_t find_time(const std::vector<State>& states, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (std::abs(states[k].t - t) <= tol) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

}  // namespace

double moment(const State& state, double r) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  double sum = 0.0;
  for (std::size_t i = 0; i < state.xi.size(); ++i) sum += power(x[i], r) * state.xi[i] * w[i];
  return sum;
}

double truncated_moment(const State& state, double r, double m) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  double sum = 0.0;
  for (std::size_t i = 0; i < state.xi.size(); ++i) {
    if (x[i] >= m) sum += power(x[i], r) * state.xi[i] * w[i];
  }
  return sum;
}

MomentRecord MomentSeries::make_record(const State& state) const {
  MomentRecord rec;
  rec.t = state.t;
  rec.M0 = moment(state, 0.0);
  rec.M1 = moment(state, 1.0);
  rec.higher.reserve(orders.size());
  for (double r : orders) rec.higher.push_back(moment(state, r));
  rec.truncated.reserve(thresholds.size());
  for (double m : thresholds) rec.truncated.push_back(truncated_moment(state, 1.0, m));
  rec.gel_mass = state.gel_mass;
  rec.clamped_mass = state.clamped_mass;
  return rec;
}

double MomentSeries::initial_mass() const {
  if (records.empty()) return 0.0;
  return records.front().M1 + records.front().gel_mass;
}

HolderResult holder_check(const State& state, double r, double beta) {
  if (r < 2.0 || !(beta > 1.0)) {
    throw Error(ErrorCode::InvalidInput, "holder_check needs r >= 2 and beta > 1");
  }
  const double m1 = moment(state, 1.0);
  if (!(m1 > 0.0)) throw Error(ErrorCode::DegenerateState, "holder_check needs positive mass");
  const double sigma = (beta - 1.0) / (r - 1.0);
  HolderResult out;
  out.lhs = std::pow(moment(state, r), sigma + 1.0) * std::pow(m1, -sigma);
  out.rhs = moment(state, r + beta - 1.0);
  out.satisfied = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

std::pair<double, double> moment_rhs_with_scale(const State& state, const KernelTable& table,
                                                double r) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  const std::size_t n = state.xi.size();
  std::vector<double> xr(n);
  for (std::size_t i = 0; i < n; ++i) xr[i] = power(x[i], r);

  double total = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double mi = state.xi[i] * w[i];
    if (mi == 0.0) continue;
    const double xr1 = power(x[i], r - 1.0);
    const double* k = table.row(i);
    double inner = 0.0;
    double inner_abs = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      // r nu mu^(r-1) - nu^r >= (r-1) nu mu^(r-1) >= 0 for nu < mu.
      const double term = (r * x[j] * xr1 - xr[j]) * k[j] * state.xi[j] * w[j];
      inner += term;
      inner_abs += std::abs(term);
    }
    total += mi * inner;
    scale += mi * inner_abs;
  }
  if (!std::isfinite(total)) throw Error(ErrorCode::NumericalFailure, "moment_rhs overflow");
  return {total, scale};
}

double moment_rhs(const State& state, const KernelTable& table, double r) {
  return moment_rhs_with_scale(state, table, r).first;
}

double moment_rhs(const State& state, const KernelSpec& kernel, double r) {
  return moment_rhs(state, KernelTable(kernel, *state.grid), r);
}

MomentResidual moment_residual(const Trajectory& run, double r) {
  const auto& states = run.states;
  if (states.size() < 3) {
    throw Error(ErrorCode::InsufficientRecords, "moment_residual needs at least 3 records");
  }
  const KernelTable table(run.kernel, *states.front().grid);

  std::vector<double> m(states.size());
  std::vector<double> t(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    m[k] = moment(states[k], r);
    t[k] = states[k].t;
  }

  MomentResidual out;
  {
    // Second-order one-sided difference at the first record.
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    const double a = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    const double b = (h1 + h2) / (h1 * h2);
    const double c = -h1 / (h2 * (h1 + h2));
    out.initial_derivative = a * m[0] + b * m[1] + c * m[2];
    out.initial_rhs = moment_rhs(states[0], table, r);
  }
  for (std::size_t k = 1; k + 1 < states.size(); ++k) {
    // Three-point derivative; reduces to the centered difference on a uniform cadence.
    const double hm = t[k] - t[k - 1];
    const double hp = t[k + 1] - t[k];
    const double deriv = (hm * hm * m[k + 1] - hp * hp * m[k - 1] + (hp * hp - hm * hm) * m[k]) /
                         (hm * hp * (hm + hp));
    const double q = moment_rhs(states[k], table, r);
    const double rel = std::abs(deriv - q) / std::max(std::abs(q), kResidualFloor);
    out.samples.push_back({t[k], deriv, q});
    out.max_relative = std::max(out.max_relative, rel);
  }
  return out;
}

TestFunction TestFunction::capped_identity(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidInput, "test function cap must be positive");
  return TestFunction{TestFunctionKind::CappedIdentity, lambda, 1.0, std::nullopt};
}

TestFunction TestFunction::capped_power(double r, double lambda, std::optional<double> blend) {
  if (!(lambda > 0.0) || !(r >= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "capped_power needs lambda > 0 and r >= 1");
  }
  if (blend && !(*blend > 0.0 && *blend < lambda)) {
    throw Error(ErrorCode::InvalidInput, "blend width must lie in (0, lambda)");
  }
  return TestFunction{TestFunctionKind::CappedPower, lambda, r, blend};
}

// CappedPower: mu^r up to a = lambda - w, then the quadratic that keeps value and slope at a
// and reaches zero slope at lambda (the cubic Hermite blend for these end data), then constant.
double TestFunction::value(double mu) const {
  if (kind == TestFunctionKind::CappedIdentity) return std::min(mu, lambda);
  const double w = blend.value_or(lambda / 10.0);
  const double a = lambda - w;
  if (mu <= a) return std::pow(mu, r);
  const double va = std::pow(a, r);
  const double sa = r * std::pow(a, r - 1.0);
  const double s = std::min(mu, lambda) - a;
  return va + sa * s - sa * s * s / (2.0 * w);
}

double TestFunction::derivative(double mu) const {
  if (mu >= lambda) return 0.0;
  if (kind == TestFunctionKind::CappedIdentity) return 1.0;
  const double w = blend.value_or(lambda / 10.0);
  const double a = lambda - w;
  if (mu <= a) return r * std::pow(mu, r - 1.0);
  const double sa = r * std::pow(a, r - 1.0);
  return sa * (1.0 - (mu - a) / w);
}

std::pair<double, double> weak_form_rate(const State& state, const KernelTable& table,
                                         const TestFunction& test) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  const std::size_t n = state.xi.size();
  std::vector<double> phi(n);
  std::vector<double> dphi(n);
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = test.value(x[i]);
    dphi[i] = test.derivative(x[i]);
    mass[i] = state.xi[i] * w[i];
  }
  double total = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (mass[i] == 0.0) continue;
    const double* k = table.row(i);
    double inner = 0.0;
    double inner_abs = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double term = (x[j] * dphi[i] - phi[j]) * k[j] * mass[j];
      inner += term;
      inner_abs += std::abs(term);
    }
    total += mass[i] * inner;
    scale += mass[i] * inner_abs;
  }
  return {total, scale};
}

WeakFormResult weak_form_residual(const Trajectory& run, const TestFunction& test, double t) {
  const auto& states = run.states;
  const std::ptrdiff_t last = find_time(states, t);
  if (last < 0) throw Error(ErrorCode::UnknownTime, "no recorded state at the requested time");

  const State& s0 = states.front();
  const State& st = states[static_cast<std::size_t>(last)];
  const auto x = s0.grid->midpoints();
  const auto w = s0.grid->widths();

  WeakFormResult out;
  double scale = 0.0;
  for (std::size_t i = 0; i < s0.xi.size(); ++i) {
    const double phi = test.value(x[i]);
    out.lhs += phi * (st.xi[i] - s0.xi[i]) * w[i];
    scale += std::abs(phi) * (st.xi[i] + s0.xi[i]) * w[i];
  }

  if (last > 0) {
    const KernelTable table(run.kernel, *s0.grid);
    auto prev = weak_form_rate(states[0], table, test);
    for (std::ptrdiff_t k = 1; k <= last; ++k) {
      const auto cur = weak_form_rate(states[static_cast<std::size_t>(k)], table, test);
      const double dt = states[static_cast<std::size_t>(k)].t - states[static_cast<std::size_t>(k - 1)].t;
      out.rhs += 0.5 * dt * (prev.first + cur.first);
      scale += 0.5 * dt * (prev.second + cur.second);
      prev = cur;
    }
  }

  out.floor = std::max(kResidualFloor, kWeakFormRoundoff * scale);
  out.residual =
      std::abs(out.lhs - out.rhs) / std::max({std::abs(out.lhs), std::abs(out.rhs), out.floor});
  return out;
}

std::vector<std::pair<double, double>> pth_root_diagnostic(const State& state,
                                                           std::span<const double> orders) {
  const auto x = state.grid->midpoints();
  const auto w = state.grid->widths();
  std::vector<std::pair<double, double>> out;
  out.reserve(orders.size());
  for (double p : orders) {
    if (!(p >= 1.0)) throw Error(ErrorCode::InvalidInput, "pth-root orders must be >= 1");
    // log M^p via log-sum-exp so large p on large cutoffs does not overflow.
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (state.xi[i] > 0.0) peak = std::max(peak, p * std::log(x[i]) + std::log(state.xi[i] * w[i]));
    }
    if (!std::isfinite(peak)) {
      out.emplace_back(p, 0.0);
      continue;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (state.xi[i] > 0.0) acc += std::exp(p * std::log(x[i]) + std::log(state.xi[i] * w[i]) - peak);
    }
    out.emplace_back(p, std::exp((peak + std::log(acc)) / p));
  }
  return out;
}

}  // namespace ohs
