#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ohs {

/// Constants of the two-sided kernel bound:
///   theta1 (mu^beta + nu^beta) <= kernel(mu, nu) <= theta2 (1+mu)^gamma (1+nu)^gamma.
struct CertificationParams {
  double theta1 = 1.0;
  double theta2 = 1.0;
  double beta = 1.5;
  double gamma = 1.5;

  /// Throws InvalidInput unless theta1, theta2 > 0 and 1 < beta <= gamma.
  void validate() const;
};

/// Built-in symmetric perturbations Psi with 0 <= Psi <= K (mu + nu).
enum class Perturbation { Zero, HalfSum, Min };

namespace kernel {

struct Constant {
  double value = 1.0;
};

/// theta1 (mu^beta + nu^beta)
struct PowerSum {
  double theta1 = 1.0;
  double beta = 1.5;
};

/// theta1 mu^beta + theta1 nu^beta + Psi(mu, nu), the family for which mass
/// conservation of weak solutions is known.
struct MassConservingFamily {
  double theta1 = 1.0;
  double beta = 2.0;
  Perturbation psi = Perturbation::Zero;
  double K = 0.0;
};

/// (mu nu)^exponent. Comparison kernel only, not part of the mass-conserving family.
struct Product {
  double exponent = 1.0;
};

}  // namespace kernel

using KernelKind =
    std::variant<kernel::Constant, kernel::PowerSum, kernel::MassConservingFamily, kernel::Product>;

struct KernelSpec {
  KernelKind kind = kernel::Constant{};
  std::optional<CertificationParams> cert;

  /// Throws InvalidInput on nonsensical parameters (negative rates, K < 0, ...).
  void validate() const;
  std::string name() const;
};

/// Coagulation rate at (mu, nu). Symmetric bit-for-bit.
/// Throws InvalidInput for nonpositive sizes and EvaluationOverflow for non-finite results.
double eval(const KernelSpec& kernel, double mu, double nu);

double eval_perturbation(Perturbation psi, double K, double mu, double nu);

bool is_mass_conserving_family(const KernelSpec& kernel);

/// Certification parameters implied by the kernel's own constants, when the kind has them
/// (PowerSum and MassConservingFamily). Empty for Constant and Product.
std::optional<CertificationParams> default_certification(const KernelSpec& kernel);

struct SamplePoint {
  double mu;
  double nu;
};

/// Tensor lattice of sample points; log-spaced by default.
struct SampleLattice {
  std::vector<SamplePoint> points;

  static SampleLattice log_spaced(double lo, double hi, int n);
  static SampleLattice from_points(std::vector<SamplePoint> points);
};

struct Violation {
  double mu;
  double nu;
  double value;
  double lower;
  double upper;
};

struct CertificationReport {
  std::size_t samples = 0;
  std::vector<Violation> violations;

  bool certified() const { return violations.empty(); }
};

/// Checks the sandwich bounds on every lattice point. Comparisons allow a relative slack of
/// 1e-12 so that kernels written as theta1 mu^beta + theta1 nu^beta are not rejected over
/// rounding against theta1 (mu^beta + nu^beta).
CertificationReport certify_hypothesis_A(const KernelSpec& kernel,
                                         const CertificationParams& params,
                                         const SampleLattice& samples);

}  // namespace ohs
