#include <doctest.h>

#include <cmath>
#include <random>

#include "ohs/error.hpp"
#include "ohs/kernels.hpp"

using namespace ohs;

namespace {

KernelSpec constant(double v) { return {kernel::Constant{v}, std::nullopt}; }
KernelSpec power_sum(double theta1, double beta) { return {kernel::PowerSum{theta1, beta}, std::nullopt}; }
KernelSpec family(double theta1, double beta, Perturbation psi, double K) {
  return {kernel::MassConservingFamily{theta1, beta, psi, K}, std::nullopt};
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ohs::Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("eval: closed forms") {
  CHECK(eval(constant(1.0), 3.7, 0.2) == 1.0);
  CHECK(eval(power_sum(1.0, 2.0), 2.0, 3.0) == doctest::Approx(13.0).epsilon(1e-15));
  CHECK(eval(family(1.0, 2.0, Perturbation::Zero, 0.0), 2.0, 3.0) == doctest::Approx(13.0).epsilon(1e-15));
  CHECK(eval(family(1.0, 2.0, Perturbation::HalfSum, 2.0), 2.0, 3.0) == doctest::Approx(18.0));
  CHECK(eval(family(1.0, 2.0, Perturbation::Min, 2.0), 2.0, 3.0) == doctest::Approx(17.0));
  CHECK(eval({kernel::Product{1.0}, std::nullopt}, 2.0, 3.0) == doctest::Approx(6.0));
}

TEST_CASE("eval: symmetric on random pairs") {
  std::mt19937 rng(20260101);
  std::uniform_real_distribution<double> logsize(-6.0, 6.0);
  const KernelSpec kernels[] = {constant(2.5), power_sum(0.7, 1.5), family(1.3, 2.0, Perturbation::HalfSum, 0.4),
                                family(1.0, 1.2, Perturbation::Min, 3.0), {kernel::Product{0.8}, std::nullopt}};
  for (int n = 0; n < 1000; ++n) {
    const double mu = std::exp(logsize(rng));
    const double nu = std::exp(logsize(rng));
    for (const auto& k : kernels) {
      REQUIRE(eval(k, mu, nu) == eval(k, nu, mu));
      REQUIRE(eval(k, mu, nu) >= 0.0);
    }
  }
}

TEST_CASE("eval: errors") {
  CHECK(code_of([] { eval(power_sum(1.0, 2.0), 1e200, 1.0); }) == ErrorCode::EvaluationOverflow);
  CHECK(code_of([] { eval(constant(1.0), 0.0, 1.0); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { eval(constant(1.0), 1.0, -2.0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("kernel validation") {
  CHECK_NOTHROW(power_sum(1.0, 1.5).validate());
  CHECK_THROWS_AS(power_sum(0.0, 1.5).validate(), Error);
  CHECK_THROWS_AS(family(1.0, 1.0, Perturbation::Zero, 0.0).validate(), Error);
  CHECK_THROWS_AS(family(1.0, 2.0, Perturbation::Min, -1.0).validate(), Error);
  KernelSpec bad = power_sum(1.0, 1.5);
  bad.cert = CertificationParams{1.0, 2.0, 1.5, 1.2};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("certify: power sum passes on [0.1, 10]^2") {
  const auto report = certify_hypothesis_A(power_sum(1.0, 1.5), {1.0, 2.0, 1.5, 1.5},
                                           SampleLattice::log_spaced(0.1, 10.0, 20));
  CHECK(report.samples == 400);
  CHECK(report.certified());
}

TEST_CASE("certify: constant kernel fails the lower bound at (2,2)") {
  const auto report = certify_hypothesis_A(constant(1.0), {1.0, 2.0, 1.5, 1.5},
                                           SampleLattice::from_points({{2.0, 2.0}, {0.01, 0.01}}));
  REQUIRE(report.violations.size() == 1);
  const auto& v = report.violations.front();
  CHECK(v.mu == 2.0);
  CHECK(v.nu == 2.0);
  CHECK(v.value == 1.0);
  CHECK(v.lower == doctest::Approx(2.0 * std::pow(2.0, 1.5)));
  CHECK(v.lower == doctest::Approx(5.657).epsilon(1e-4));
}

TEST_CASE("certify: equality case on a single point") {
  const auto report = certify_hypothesis_A(power_sum(1.0, 1.5), {1.0, 2.0, 1.5, 1.5},
                                           SampleLattice::from_points({{1.0, 1.0}}));
  CHECK(report.samples == 1);
  CHECK(report.certified());
  CHECK(eval(power_sum(1.0, 1.5), 1.0, 1.0) == 2.0);
}

TEST_CASE("certify: empty lattice is invalid input") {
  CHECK(code_of([] { certify_hypothesis_A(constant(1.0), {1.0, 2.0, 1.5, 1.5}, SampleLattice{}); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("certify: violations shrink as theta2 grows") {
  // Upper bound only gets looser, so the violation set is monotone in theta2.
  const auto lattice = SampleLattice::log_spaced(1e-2, 1e2, 30);
  std::size_t previous = SIZE_MAX;
  for (double theta2 : {1e-3, 1e-2, 0.1, 1.0, 2.0}) {
    const auto report = certify_hypothesis_A(power_sum(1.0, 2.0), {1.0, theta2, 2.0, 2.0}, lattice);
    CHECK(report.violations.size() <= previous);
    previous = report.violations.size();
  }
  CHECK(previous == 0);
}

TEST_CASE("default certification holds on a wide lattice") {
  const auto lattice = SampleLattice::log_spaced(1e-3, 1e3, 64);
  for (const auto& k : {power_sum(1.0, 1.5), family(1.0, 2.0, Perturbation::HalfSum, 0.5),
                        family(2.0, 1.5, Perturbation::Min, 1.0)}) {
    const auto cert = default_certification(k);
    REQUIRE(cert.has_value());
    CHECK(certify_hypothesis_A(k, *cert, lattice).certified());
  }
  CHECK_FALSE(default_certification(constant(1.0)).has_value());
  CHECK_FALSE(default_certification(power_sum(1.0, 0.5)).has_value());
}

TEST_CASE("is_mass_conserving_family") {
  CHECK(is_mass_conserving_family(family(1.0, 2.0, Perturbation::Zero, 0.0)));
  CHECK_FALSE(is_mass_conserving_family(constant(1.0)));
  CHECK_FALSE(is_mass_conserving_family(power_sum(1.0, 1.5)));
}
