#include <doctest.h>

#include <cmath>

#include "ohs/error.hpp"
#include "ohs/gelation.hpp"
#include "ohs/moments.hpp"
#include "ohs/oracle.hpp"
#include "ohs/solver.hpp"
#include "support.hpp"

using namespace ohs;
using namespace ohs::testing;

namespace {

MomentSeries gel_series(std::vector<double> times, std::vector<double> gel) {
  MomentSeries s;
  for (std::size_t k = 0; k < times.size(); ++k) {
    MomentRecord r;
    r.t = times[k];
    r.M1 = 1.0 - gel[k];
    r.gel_mass = gel[k];
    s.records.push_back(r);
  }
  return s;
}

// Adaptive RK4 for dQ/dt = c Q^(sigma+1); returns the first time Q exceeds `ceiling`.
double integrate_until(double Q0, double c, double sigma, double ceiling) {
  auto f = [&](double q) { return c * std::pow(q, sigma + 1.0); };
  double t = 0.0;
  double q = Q0;
  while (q <= ceiling) {
    const double h = 1e-4 / (c * std::pow(q, sigma));
    const double k1 = f(q);
    const double k2 = f(q + 0.5 * h * k1);
    const double k3 = f(q + 0.5 * h * k2);
    const double k4 = f(q + h * k3);
    q += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    t += h;
  }
  return t;
}

}  // namespace

TEST_CASE("gelation time: linear interpolation") {
  const auto t = gelation_time(gel_series({0.0, 1.0, 2.0}, {0.0, 0.005, 0.02}), 0.01);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(gelation_time(gel_series({0.0, 1.0}, {0.0, 0.005}), 0.01).has_value());
}

TEST_CASE("gelation time: constant kernel with support inside the domain") {
  const RunResult r = run(bagland_config(256, 1.0));
  CHECK_FALSE(gelation_time(r.series, 0.01).has_value());
}

TEST_CASE("gelation time: power-sum regression value") {
  const RunResult r = run(power_sum_config(8.0, 256, 2.0));
  const auto t = gelation_time(r.series, 0.01);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(0.76296366856943743).epsilon(1e-9));
}

TEST_CASE("cutoff sweep: constant kernel never loses mass") {
  SimConfig c = bagland_config(0, 1.0);
  const std::vector<double> cutoffs{4.0, 8.0};
  const auto report = cutoff_sweep(c, cutoffs, 0.01, 1.0 / 32.0, 2);
  REQUIRE(report.table.size() == 2);
  for (const auto& row : report.table) {
    CHECK(row.ok());
    CHECK_FALSE(row.t_loss.has_value());
    CHECK(row.gel_fraction_final < 1e-12);
  }
  CHECK(report.table[0].N == 128);
  CHECK(report.table[1].N == 256);
}

TEST_CASE("cutoff sweep: empty cutoff list") {
  const auto report = cutoff_sweep(power_sum_config(), std::vector<double>{}, 0.01, 0.125, 2);
  CHECK(report.table.empty());
  CHECK(report.bound_evaluations.empty());
}

TEST_CASE("cutoff sweep: rows match serial runs") {
  const SimConfig base = power_sum_config(8.0, 64, 2.0);
  const std::vector<double> cutoffs{4.0, 8.0, 16.0};
  const auto report = cutoff_sweep(base, cutoffs, 0.01, 0.125, 3);
  REQUIRE(report.table.size() == 3);
  double previous_R = 0.0;
  for (const auto& row : report.table) {
    CHECK(row.R > previous_R);
    previous_R = row.R;
    const SimConfig c = sweep_row_config(base, row.R, 0.125);
    CHECK(c.grid.N == row.N);
    const RunResult serial = run(c);
    REQUIRE(row.result.has_value());
    CHECK(row.result->final_state.xi == serial.final_state.xi);
    CHECK(row.t_loss == gelation_time(serial.series, 0.01));
    CHECK(row.gel_fraction_final == serial.series.records.back().gel_mass / serial.series.initial_mass());
  }
  CHECK(report.bound_evaluations.size() == 9);
  for (const auto& b : report.bound_evaluations) {
    CHECK(b.delta == 0.0);
    CHECK(b.bound > 0.0);
  }
}

TEST_CASE("cutoff sweep: cutoffs must increase") {
  const std::vector<double> cutoffs{8.0, 4.0};
  CHECK_THROWS_AS(cutoff_sweep(power_sum_config(), cutoffs, 0.01, 0.125, 1), Error);
}

TEST_CASE("cutoff sweep: a failing row does not stop the others") {
  const std::vector<double> cutoffs{0.75, 4.0};
  const auto report = cutoff_sweep(power_sum_config(), cutoffs, 0.01, 0.125, 2);
  REQUIRE(report.table.size() == 2);
  CHECK_FALSE(report.table[0].ok());
  CHECK(report.table[0].error.find("support-outside-domain") != std::string::npos);
  CHECK(report.table[1].ok());
  CHECK(report.table[1].t_loss.has_value());
}

TEST_CASE("blow-up bound values") {
  CHECK(blowup_bound(3.0, 0.0, 4.0, 1.0, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(blowup_bound(2.0, 1.0, 1.0, 1.0, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  double previous = INFINITY;
  for (double m : {1.0, 1e3, 1e6, 1e12, 1e24}) {
    const double b = blowup_bound(3.0, 0.25, m, 1.0, 2.0, 1.0);
    CHECK(b < previous);
    CHECK(b > 0.25);
    previous = b;
  }
  CHECK(previous - 0.25 < 1e-11);
  CHECK_THROWS_AS(blowup_bound(3.0, 0.0, 4.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(blowup_bound(1.5, 0.0, 4.0, 1.0, 2.0, 1.0), Error);
  CHECK_THROWS_AS(blowup_bound(3.0, 0.0, 0.0, 1.0, 2.0, 1.0), Error);
  CHECK_THROWS_AS(blowup_bound(3.0, 0.0, 4.0, 1.0, 2.0, 0.0), Error);
  CHECK_THROWS_AS(blowup_bound(3.0, 0.0, 4.0, 0.0, 2.0, 1.0), Error);
}

TEST_CASE("comparison ODE blow-up time") {
  CHECK(comparison_ode_blowup(1.0, 1.0, 1.0) == 1.0);
  CHECK(comparison_ode_blowup(4.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(comparison_ode_blowup(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(comparison_ode_blowup(1.0, -1.0, 1.0), Error);
  CHECK_THROWS_AS(comparison_ode_blowup(1.0, 1.0, 0.0), Error);
}

TEST_CASE("forward integration of the comparison ODE diverges just before the closed form") {
  struct Case {
    double Q0, c, sigma;
  };
  for (const Case& k : {Case{1.0, 1.0, 1.0}, Case{4.0, 2.0, 0.5}, Case{2.0, 0.5, 1.5}, Case{0.3, 3.0, 2.0}}) {
    const double T = comparison_ode_blowup(k.Q0, k.c, k.sigma);
    const double crossing = integrate_until(k.Q0, k.c, k.sigma, 1e6);
    CAPTURE(k.Q0);
    CAPTURE(k.sigma);
    CHECK(crossing >= 0.99 * T);
    CHECK(crossing <= T);
  }
}

TEST_CASE("blow-up bound equals the comparison ODE time on a 5x5 (r, beta) grid") {
  const double theta1 = 1.3, rho0 = 0.8, Q0 = 2.5;
  for (double r : {2.0, 2.5, 3.0, 4.0, 5.0}) {
    for (double beta : {1.1, 1.5, 2.0, 2.5, 3.0}) {
      const double sigma = (beta - 1.0) / (r - 1.0);
      const double c = theta1 * std::pow(rho0, 1.0 - sigma) * (r - 1.0);
      const double bound = blowup_bound(r, 0.0, Q0, theta1, beta, rho0);
      const double ode = comparison_ode_blowup(Q0, c, sigma);
      CHECK(std::abs(bound - ode) <= 1e-12 * ode);
    }
  }
}

TEST_CASE("exponential fit recovers a planted rate") {
  std::vector<double> t, y;
  for (int k = 0; k <= 50; ++k) {
    t.push_back(0.02 * k);
    y.push_back(std::exp(-3.0 * t.back()));
  }
  const auto rate = fit_exponential_rate(t, y);
  REQUIRE(rate.has_value());
  CHECK(std::abs(*rate - 3.0) <= 1e-6);
  CHECK_FALSE(fit_exponential_rate(t, std::vector<double>(t.size(), 0.0)).has_value());
}

TEST_CASE("tail decay fit") {
  SUBCASE("zero tail is not applicable") {
    const auto grid = uniform_grid(8.0, 256);
    Trajectory traj{KernelSpec{kernel::Constant{1.0}, std::nullopt}, {}};
    for (int k = 0; k <= 5; ++k) traj.states.push_back(project_bagland(grid, BaglandSolution(1.0), 0.1 * k));
    const auto fit = tail_decay_fit(traj, 4.0, 1.0, 1.5);
    CHECK_FALSE(fit.fitted_rate.has_value());
    CHECK(fit.samples.size() == 6);
    CHECK(fit.reference_rate == doctest::Approx(0.5 * std::pow(4.0, 0.5)));
  }
  SUBCASE("power-sum regression value") {
    const SimConfig c = power_sum_config(8.0, 256, 2.0);
    const RunResult r = run(c, true);
    const auto fit = tail_decay_fit(r.trajectory(c.kernel), 4.0, 1.0, 1.5);
    REQUIRE(fit.fitted_rate.has_value());
    CHECK(*fit.fitted_rate == doctest::Approx(-139.79809445032694).epsilon(1e-6));
    CHECK(fit.samples.size() == 93);
    CHECK(fit.reference_rate == doctest::Approx(1.0));
  }
  SUBCASE("empty window") {
    const SimConfig c = power_sum_config(8.0, 128, 0.2);
    const RunResult r = run(c, true);
    try {
      tail_decay_fit(r.trajectory(c.kernel), 0.25, 1.0, 1.5);
      FAIL("expected window-empty");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WindowEmpty);
    }
  }
}

TEST_CASE("tail positivity") {
  const SimConfig c = bagland_config(1024, 2.0);
  const RunResult r = run(c, true);
  const auto at0 = tail_positivity(r.snapshots.front(), 2.0);
  CHECK(at0.value == 0.0);
  CHECK_FALSE(at0.positive);
  const auto at2 = tail_positivity(r.final_state, 2.0);
  CHECK(at2.positive);
  CHECK(at2.value == doctest::Approx(0.55801699580819575).epsilon(1e-9));
  const auto zero = tail_positivity(State::empty(uniform_grid(4.0, 8)), 2.0);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.positive);
}
