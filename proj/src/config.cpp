#include "ohs/config.hpp"

#include <cmath>

#include "ohs/error.hpp"

namespace ohs {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace

void SimConfig::validate() const {
  kernel.validate();
  require(grid.R > 0.0 && std::isfinite(grid.R), "grid.R must be positive");
  require(grid.N >= 2, "grid.N must be at least 2");
  if (grid.kind == GridKind::Geometric) require(grid.q && *grid.q > 1.0, "geometric grid needs q > 1");
  require(t_end >= 0.0 && std::isfinite(t_end), "t_end must be >= 0");
  require(cfl > 0.0 && cfl <= 1.0, "cfl must lie in (0, 1]");
  require(record_cadence > 0.0 && std::isfinite(record_cadence), "record_cadence must be positive");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(!dt_max || *dt_max > 0.0, "dt_max must be positive");
  require(max_steps > 0, "max_steps must be positive");
  for (double m : moments.truncation_thresholds) {
    require(m >= 0.0 && m <= grid.R, "truncation thresholds must lie in [0, R]");
  }
  for (double r : moments.orders) require(std::isfinite(r), "moment orders must be finite");
  if (sweep) {
    require(sweep->epsilon > 0.0 && sweep->epsilon < 1.0, "sweep.epsilon must lie in (0, 1)");
    require(sweep->resolution > 0.0, "sweep.resolution must be positive");
    for (std::size_t i = 0; i < sweep->cutoffs.size(); ++i) {
      require(sweep->cutoffs[i] > 0.0, "sweep cutoffs must be positive");
      if (i > 0) require(sweep->cutoffs[i] > sweep->cutoffs[i - 1], "sweep cutoffs must increase");
    }
  }
  require(check.residual_tolerance > 0.0, "check.residual_tolerance must be positive");
  require(check.weak_form_lambda_fraction > 0.0, "check.weak_form_lambda_fraction must be positive");
  require(check.bookkeeping_tolerance > 0.0, "check.bookkeeping_tolerance must be positive");
}

double SimConfig::resolved_dt_max() const {
  if (dt_max) return *dt_max;
  return t_end > 0.0 ? 1e-2 * t_end : 1.0;
}

}  // namespace ohs
