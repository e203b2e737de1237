#include "ohs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ohs/error.hpp"

namespace ohs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kCertSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace

void CertificationParams::validate() const {
  require(theta1 > 0.0 && std::isfinite(theta1), "certification theta1 must be positive");
  require(theta2 > 0.0 && std::isfinite(theta2), "certification theta2 must be positive");
  require(beta > 1.0, "certification beta must exceed 1");
  require(gamma >= beta && std::isfinite(gamma), "certification gamma must be >= beta");
}

void KernelSpec::validate() const {
  std::visit(Overloaded{
                 [](const kernel::Constant& k) {
                   require(k.value >= 0.0 && std::isfinite(k.value),
                           "constant kernel value must be nonnegative");
                 },
                 [](const kernel::PowerSum& k) {
                   require(k.theta1 > 0.0 && std::isfinite(k.theta1), "theta1 must be positive");
                   require(std::isfinite(k.beta), "beta must be finite");
                 },
                 [](const kernel::MassConservingFamily& k) {
                   require(k.theta1 > 0.0 && std::isfinite(k.theta1), "theta1 must be positive");
                   require(k.beta > 1.0 && std::isfinite(k.beta),
                           "mass-conserving family needs beta > 1");
                   require(k.K >= 0.0 && std::isfinite(k.K), "K must be nonnegative");
                 },
                 [](const kernel::Product& k) {
                   require(std::isfinite(k.exponent), "product exponent must be finite");
                 },
             },
             kind);
  if (cert) cert->validate();
}

std::string KernelSpec::name() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const kernel::Constant& k) { os << "constant(" << k.value << ")"; },
                 [&](const kernel::PowerSum& k) {
                   os << "power_sum(theta1=" << k.theta1 << ", beta=" << k.beta << ")";
                 },
                 [&](const kernel::MassConservingFamily& k) {
                   os << "mass_conserving(theta1=" << k.theta1 << ", beta=" << k.beta
                      << ", K=" << k.K << ")";
                 },
                 [&](const kernel::Product& k) { os << "product(" << k.exponent << ")"; },
             },
             kind);
  return os.str();
}

double eval_perturbation(Perturbation psi, double K, double mu, double nu) {
  switch (psi) {
    case Perturbation::Zero: return 0.0;
    case Perturbation::HalfSum: return K * (mu + nu) / 2.0;
    case Perturbation::Min: return K * std::min(mu, nu);
  }
  return 0.0;
}

double eval(const KernelSpec& kernel, double mu, double nu) {
  if (!(mu > 0.0) || !(nu > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "kernel arguments must be positive");
  }
  // Every formula is written so that swapping mu and nu yields the same bits.
  const double value = std::visit(
      Overloaded{
          [](const kernel::Constant& k) { return k.value; },
          [&](const kernel::PowerSum& k) {
            return k.theta1 * (std::pow(mu, k.beta) + std::pow(nu, k.beta));
          },
          [&](const kernel::MassConservingFamily& k) {
            return k.theta1 * (std::pow(mu, k.beta) + std::pow(nu, k.beta)) +
                   eval_perturbation(k.psi, k.K, mu, nu);
          },
          [&](const kernel::Product& k) { return std::pow(mu * nu, k.exponent); },
      },
      kernel.kind);
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << kernel.name() << " at (" << mu << ", " << nu << ")";
    throw Error(ErrorCode::EvaluationOverflow, os.str());
  }
  return value;
}

bool is_mass_conserving_family(const KernelSpec& kernel) {
  return std::holds_alternative<kernel::MassConservingFamily>(kernel.kind);
}

std::optional<CertificationParams> default_certification(const KernelSpec& kernel) {
  // theta1 (mu^b + nu^b) <= 2 theta1 (1+mu)^b (1+nu)^b and K (mu+nu) <= 2K (1+mu)^b (1+nu)^b.
  if (const auto* k = std::get_if<kernel::PowerSum>(&kernel.kind); k && k->beta > 1.0) {
    return CertificationParams{k->theta1, 2.0 * k->theta1, k->beta, k->beta};
  }
  if (const auto* k = std::get_if<kernel::MassConservingFamily>(&kernel.kind)) {
    return CertificationParams{k->theta1, 2.0 * (k->theta1 + k->K), k->beta, k->beta};
  }
  return std::nullopt;
}

SampleLattice SampleLattice::log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw Error(ErrorCode::InvalidInput, "log lattice needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> axis(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) axis[i] = std::exp(a + (b - a) * i / (n - 1));
  axis.front() = lo;
  axis.back() = hi;

  SampleLattice lattice;
  lattice.points.reserve(axis.size() * axis.size());
  for (double mu : axis) {
    for (double nu : axis) lattice.points.push_back({mu, nu});
  }
  return lattice;
}

SampleLattice SampleLattice::from_points(std::vector<SamplePoint> points) {
  for (const auto& p : points) {
    if (!(p.mu > 0.0) || !(p.nu > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "lattice points must be strictly positive");
    }
  }
  return SampleLattice{std::move(points)};
}

CertificationReport certify_hypothesis_A(const KernelSpec& kernel,
                                         const CertificationParams& params,
                                         const SampleLattice& samples) {
  if (samples.points.empty()) throw Error(ErrorCode::InvalidInput, "empty sample lattice");
  params.validate();

  CertificationReport report;
  report.samples = samples.points.size();
  for (const auto& [mu, nu] : samples.points) {
    const double value = eval(kernel, mu, nu);
    const double lower = params.theta1 * (std::pow(mu, params.beta) + std::pow(nu, params.beta));
    const double upper =
        params.theta2 * std::pow(1.0 + mu, params.gamma) * std::pow(1.0 + nu, params.gamma);
    const bool ok_lower = lower <= value * (1.0 + kCertSlack);
    const bool ok_upper = value <= upper * (1.0 + kCertSlack);
    if (!ok_lower || !ok_upper) report.violations.push_back({mu, nu, value, lower, upper});
  }
  return report;
}

}  // namespace ohs
