#include "ohs/gelation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ohs/error.hpp"

namespace ohs {

std::optional<double> gelation_time(const MomentSeries& series, double epsilon) {
  const auto& recs = series.records;
  if (recs.empty()) return std::nullopt;
  const double rho0 = series.initial_mass();
  if (!(rho0 > 0.0)) return std::nullopt;
  double prev_fraction = 0.0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const double fraction = recs[k].gel_mass / rho0;
    if (fraction > epsilon) {
      if (k == 0) return recs[0].t;
      const double s = (epsilon - prev_fraction) / (fraction - prev_fraction);
      return recs[k - 1].t + s * (recs[k].t - recs[k - 1].t);
    }
    prev_fraction = fraction;
  }
  return std::nullopt;
}

namespace {

constexpr double kBoundOrders[] = {2.0, 3.0, 5.0};

SweepRow run_row(const SimConfig& base, double R, double epsilon, double resolution) {
  SweepRow row;
  row.R = R;
  try {
    const SimConfig config = sweep_row_config(base, R, resolution);
    row.N = config.grid.N;
    RunResult result = run(config);
    const double rho0 = result.series.initial_mass();
    row.t_loss = gelation_time(result.series, epsilon);
    if (!result.series.records.empty() && rho0 > 0.0) {
      row.gel_fraction_final = result.series.records.back().gel_mass / rho0;
    }
    if (!result.ok()) row.error = result.failure_message;
    row.result = std::move(result);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

SimConfig sweep_row_config(const SimConfig& base_config, double R, double resolution) {
  SimConfig config = base_config;
  config.grid.kind = GridKind::Uniform;
  config.grid.R = R;
  config.grid.N = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(R / resolution)));
  config.grid.q.reset();
  config.sweep.reset();
  std::erase_if(config.moments.truncation_thresholds, [R](double m) { return m > R; });
  return config;
}

GelationReport cutoff_sweep(const SimConfig& base_config, std::span<const double> cutoffs,
                            double epsilon, double resolution, unsigned workers) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidInput, "epsilon in (0,1)");
  if (!(resolution > 0.0)) throw Error(ErrorCode::InvalidInput, "resolution must be positive");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > cutoffs[i - 1])) throw Error(ErrorCode::InvalidInput, "cutoffs must increase");
  }

  GelationReport report;
  report.epsilon = epsilon;
  report.table.resize(cutoffs.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cutoffs.size(); i = next++) {
      report.table[i] = run_row(base_config, cutoffs[i], epsilon, resolution);
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cutoffs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n_threads; ++w) pool.emplace_back(worker);
    worker();
  }

  std::optional<CertificationParams> cert = base_config.kernel.cert;
  if (!cert) cert = default_certification(base_config.kernel);
  if (cert) {
    for (const auto& row : report.table) {
      if (!row.ok() || !row.result) continue;
      const State initial = project_initial(row.result->final_state.grid, base_config.initial_condition);
      const double rho0 = moment(initial, 1.0);
      for (double r : kBoundOrders) {
        const double mr = moment(initial, r);
        report.bound_evaluations.push_back(
            {row.R, r, 0.0, mr, blowup_bound(r, 0.0, mr, cert->theta1, cert->beta, rho0)});
      }
    }
  }
  return report;
}

double blowup_bound(double r, double delta, double Mr_delta, double theta1, double beta,
                    double rho0) {
  if (!(beta > 1.0) || !(r >= 2.0) || !(Mr_delta > 0.0) || !(rho0 > 0.0) || !(theta1 > 0.0)) {
    throw Error(ErrorCode::InvalidInput,
                "blowup_bound needs beta > 1, r >= 2 and positive M^r, rho0, theta1");
  }
  const double sigma = (beta - 1.0) / (r - 1.0);
  const double prefactor = 1.0 / ((beta - 1.0) * theta1 * std::pow(rho0, 1.0 - sigma));
  return delta + prefactor * std::pow(1.0 / Mr_delta, sigma);
}

double comparison_ode_blowup(double Q0, double c, double sigma) {
  if (!(Q0 > 0.0) || !(c > 0.0) || !(sigma > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "comparison ODE needs positive Q0, c, sigma");
  }
  return 1.0 / (sigma * c * std::pow(Q0, sigma));
}

std::optional<double> fit_exponential_rate(std::span<const double> times,
                                           std::span<const double> values) {
  if (times.size() != values.size()) {
    throw Error(ErrorCode::InvalidInput, "times and values differ in length");
  }
  double n = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(values[k] > 0.0)) continue;
    const double y = std::log(values[k]);
    n += 1.0;
    st += times[k];
    sy += y;
    stt += times[k] * times[k];
    sty += times[k] * y;
  }
  if (n < 2.0) return std::nullopt;
  const double denom = n * stt - st * st;
  if (!(std::abs(denom) > 0.0)) return std::nullopt;
  const double slope = (n * sty - st * sy) / denom;
  return -slope;
}

TailDecayFit tail_decay_fit(const Trajectory& run, double lambda, double theta1, double beta) {
  if (run.states.empty()) throw Error(ErrorCode::InsufficientRecords, "empty trajectory");
  const double R = run.states.front().grid->cutoff();
  if (!(lambda > 0.0 && lambda < R)) throw Error(ErrorCode::InvalidInput, "lambda must lie in (0, R)");

  const State& s0 = run.states.front();
  const double rho0 = moment(s0, 1.0) + s0.gel_mass;

  TailDecayFit fit;
  fit.lambda = lambda;
  fit.reference_rate = 0.5 * theta1 * rho0 * std::pow(lambda, beta - 1.0);

  std::vector<double> t;
  std::vector<double> tail;
  for (const State& s : run.states) {
    const double theta = truncated_moment(s, 1.0, lambda);
    const double gamma = moment(s, 1.0) - theta;
    if (gamma < 0.5 * rho0) continue;
    fit.samples.emplace_back(s.t, theta);
    t.push_back(s.t);
    tail.push_back(theta);
  }
  if (fit.samples.empty()) {
    throw Error(ErrorCode::WindowEmpty, "mass below lambda never reaches rho0 / 2");
  }
  fit.fitted_rate = fit_exponential_rate(t, tail);
  return fit;
}

TailPositivity tail_positivity(const State& state, double m) {
  if (!(m > 0.0 && m < state.grid->cutoff())) {
    throw Error(ErrorCode::InvalidInput, "tail threshold must lie in (0, R)");
  }
  const double value = truncated_moment(state, 1.0, m);
  return {value, value > 0.0};
}

}  // namespace ohs
