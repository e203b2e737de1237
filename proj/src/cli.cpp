#include "ohs/cli.hpp"

#include <cmath>
#include <iostream>
#include <thread>

#include "ohs/config_json.hpp"
#include "ohs/error.hpp"
#include "ohs/gelation.hpp"
#include "ohs/io.hpp"
#include "ohs/oracle.hpp"
#include "ohs/solver.hpp"

namespace ohs::cli {

using nlohmann::json;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidInput:
    case ErrorCode::SupportOutsideDomain:
    case ErrorCode::NonpositiveMass:
      return kInvalidInput;
    default:
      return kNumericalFailure;
  }
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "skipped";
}

constexpr double kHolderOrders[] = {2.0, 3.0, 5.0};
constexpr double kHolderBetas[] = {1.5, 2.0};
constexpr double kBoundOrders[] = {2.0, 3.0, 5.0};
// Upwind transport reaches the cutoff after a few hundred steps with exponentially small mass.
constexpr double kOutflowNegligible = 1e-12;

CheckResult check_certification(const SimConfig& config) {
  CheckResult out{"certification", CheckStatus::Skipped, json::object()};
  auto cert = config.kernel.cert;
  if (!cert) cert = default_certification(config.kernel);
  if (!cert) {
    out.detail["reason"] = "kernel has no certification parameters";
    return out;
  }
  const auto report = certify_hypothesis_A(config.kernel, *cert, SampleLattice::log_spaced(1e-3, 1e3, 64));
  out.status = report.certified() ? CheckStatus::Pass : CheckStatus::Fail;
  out.detail = {{"samples", report.samples},
                {"violations", report.violations.size()},
                {"theta1", cert->theta1},
                {"theta2", cert->theta2},
                {"beta", cert->beta},
                {"gamma", cert->gamma}};
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    out.detail["first_violation"] = {{"mu", v.mu}, {"nu", v.nu}, {"value", v.value},
                                     {"lower", v.lower}, {"upper", v.upper}};
  }
  return out;
}

CheckResult check_bookkeeping(const CsvTable& csv, double tolerance) {
  CheckResult out{"bookkeeping", CheckStatus::Pass, json::object()};
  const std::size_t m1 = csv.column("M1");
  const std::size_t gel = csv.column("gel_mass");
  const std::size_t clamped = csv.column("clamped_mass");
  if (csv.rows.empty()) {
    out.status = CheckStatus::Fail;
    out.detail["reason"] = "no records";
    return out;
  }
  const double rho0 = csv.rows.front()[m1] + csv.rows.front()[gel];
  double worst = 0.0;
  bool monotone = true;
  double worst_clamped = 0.0;
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    const auto& row = csv.rows[k];
    worst = std::max(worst, std::abs(row[m1] + row[gel] - rho0) / rho0);
    worst_clamped = std::max(worst_clamped, row[clamped] / rho0);
    if (k > 0 && row[gel] < csv.rows[k - 1][gel]) monotone = false;
  }
  const bool ok = worst <= tolerance && monotone && worst_clamped <= kClampTolerance;
  out.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  out.detail = {{"max_relative_drift", worst},
                {"tolerance", tolerance},
                {"gel_mass_nondecreasing", monotone},
                {"max_clamped_fraction", worst_clamped}};
  return out;
}

CheckResult check_holder(const std::vector<State>& states) {
  CheckResult out{"holder", CheckStatus::Pass, json::object()};
  double worst = 0.0;
  std::size_t evaluated = 0;
  for (const State& s : states) {
    if (!(moment(s, 1.0) > 0.0)) continue;
    for (double r : kHolderOrders) {
      for (double beta : kHolderBetas) {
        const auto h = holder_check(s, r, beta);
        ++evaluated;
        if (h.rhs > 0.0) worst = std::max(worst, h.lhs / h.rhs);
        if (!h.satisfied) out.status = CheckStatus::Fail;
      }
    }
  }
  if (evaluated == 0) out.status = CheckStatus::Skipped;
  out.detail = {{"evaluations", evaluated}, {"max_lhs_over_rhs", worst}};
  return out;
}

CheckResult check_moment_sign(const std::vector<State>& states, const KernelTable& table) {
  CheckResult out{"moment_rhs_sign", CheckStatus::Pass, json::object()};
  double worst = 0.0;
  for (const State& s : states) {
    for (double r : kHolderOrders) {
      const auto [value, scale] = moment_rhs_with_scale(s, table, r);
      if (value < -1e-14 * scale) out.status = CheckStatus::Fail;
      if (scale > 0.0) worst = std::min(worst, value / scale);
    }
  }
  out.detail = {{"min_value_over_scale", worst}};
  return out;
}

// Recorded states before a non-roundoff amount of mass has crossed the cutoff.
std::vector<State> outflow_free_prefix(const std::vector<State>& states) {
  std::vector<State> out;
  if (states.empty()) return out;
  const double rho0 = moment(states.front(), 1.0) + states.front().gel_mass;
  for (const State& s : states) {
    if (s.gel_mass > kOutflowNegligible * rho0) break;
    out.push_back(s);
  }
  return out;
}

CheckResult check_moment_residual(const Trajectory& window, double tolerance) {
  CheckResult out{"moment_residual", CheckStatus::Skipped, json::object()};
  if (window.states.size() < 3) {
    out.detail["reason"] = "fewer than 3 records before outflow starts";
    return out;
  }
  const auto res = moment_residual(window, 2.0);
  out.status = res.max_relative <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  out.detail = {{"r", 2.0},
                {"max_relative", res.max_relative},
                {"tolerance", tolerance},
                {"initial_derivative", res.initial_derivative},
                {"initial_rhs", res.initial_rhs},
                {"t_window_end", window.states.back().t}};
  return out;
}

CheckResult check_weak_form(const Trajectory& window, double lambda_fraction, double tolerance) {
  CheckResult out{"weak_form", CheckStatus::Skipped, json::object()};
  if (window.states.size() < 2) {
    out.detail["reason"] = "fewer than 2 records before outflow starts";
    return out;
  }
  const double lambda = lambda_fraction * window.states.front().grid->cutoff();
  const auto test = TestFunction::capped_identity(lambda);
  const double t = window.states.back().t;
  const auto res = weak_form_residual(window, test, t);
  const double brute = brute_force_weak_rhs(window.states, window.kernel, test);
  const double agreement = std::abs(brute - res.rhs) /
                           std::max({std::abs(brute), std::abs(res.rhs), res.floor});
  const bool ok = res.residual <= tolerance && agreement <= 1e-10;
  out.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  out.detail = {{"lambda", lambda},          {"t", t},
                {"lhs", res.lhs},            {"rhs", res.rhs},
                {"residual", res.residual},  {"tolerance", tolerance},
                {"brute_force_rhs", brute},  {"oracle_agreement", agreement}};
  return out;
}

CheckResult check_blowup_bounds(const SimConfig& config, const std::vector<State>& states) {
  CheckResult out{"blowup_bounds", CheckStatus::Skipped, json::object()};
  auto cert = config.kernel.cert;
  if (!cert) cert = default_certification(config.kernel);
  if (!cert || states.empty()) {
    out.detail["reason"] = "kernel has no certification parameters";
    return out;
  }
  out.status = CheckStatus::Pass;
  const double rho0 = moment(states.front(), 1.0) + states.front().gel_mass;
  const std::size_t picks[] = {0, states.size() / 2, states.size() - 1};
  json table = json::array();
  for (std::size_t k : picks) {
    const State& s = states[k];
    for (double r : kBoundOrders) {
      const double mr = moment(s, r);
      if (!(mr > 0.0)) continue;
      const double bound = blowup_bound(r, s.t, mr, cert->theta1, cert->beta, rho0);
      const double sigma = (cert->beta - 1.0) / (r - 1.0);
      const double c = cert->theta1 * std::pow(rho0, 1.0 - sigma) * (r - 1.0);
      const double ode = s.t + comparison_ode_blowup(mr, c, sigma);
      const double gap = std::abs(bound - ode) / bound;
      if (gap > 1e-12) out.status = CheckStatus::Fail;
      table.push_back({{"r", r}, {"delta", s.t}, {"Mr_delta", mr}, {"bound", bound},
                       {"comparison_ode", ode}, {"relative_gap", gap}});
    }
  }
  out.detail["evaluations"] = std::move(table);
  return out;
}

}  // namespace

bool CheckReport::passed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

json CheckReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
  }
  return json{{"version", kVersion}, {"passed", passed()}, {"checks", list}};
}

CheckReport run_checks(const std::filesystem::path& target) {
  const bool from_dir = std::filesystem::is_directory(target);
  const SimConfig config = load_config(from_dir ? target / "manifest.json" : target);
  const RunResult replay = run(config, true);

  std::string csv_text = from_dir ? read_text(target / "moments.csv") : moments_csv(replay.series);
  const CsvTable csv = parse_csv(csv_text);

  CheckReport report;
  report.checks.push_back(check_certification(config));
  report.checks.push_back(check_bookkeeping(csv, config.check.bookkeeping_tolerance));
  if (from_dir) {
    const bool same = csv_text == moments_csv(replay.series);
    report.checks.push_back({"replay_matches_csv", same ? CheckStatus::Pass : CheckStatus::Fail,
                             json{{"records", replay.series.records.size()}}});
  }
  if (!replay.ok()) {
    report.checks.push_back({"run_completed", CheckStatus::Fail,
                             json{{"failure", replay.failure_message}}});
  }

  const KernelTable table(config.kernel, *replay.final_state.grid);
  report.checks.push_back(check_holder(replay.snapshots));
  report.checks.push_back(check_moment_sign(replay.snapshots, table));
  const Trajectory window{config.kernel, outflow_free_prefix(replay.snapshots)};
  report.checks.push_back(check_moment_residual(window, config.check.residual_tolerance));
  report.checks.push_back(
      check_weak_form(window, config.check.weak_form_lambda_fraction, config.check.residual_tolerance));
  report.checks.push_back(check_blowup_bounds(config, replay.snapshots));
  return report;
}

int cmd_simulate(const std::filesystem::path& config_path, const Options& opts, std::ostream& log) {
  return guarded(log, [&] {
    const SimConfig config = load_config(config_path);
    const RunResult result = run(config);
    write_run(opts.out, config, result, "simulate");
    if (!opts.quiet) {
      const auto& last = result.series.records.back();
      log << "simulate: " << result.series.records.size() << " records, " << result.steps
          << " steps, t=" << last.t << " M0=" << last.M0 << " M1=" << last.M1
          << " gel_mass=" << last.gel_mass << " -> " << opts.out.string() << "\n";
    }
    if (!result.ok()) {
      log << "error: " << result.failure_message << "\n";
      return static_cast<int>(kNumericalFailure);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const std::filesystem::path& config_path, const Options& opts, std::ostream& log) {
  return guarded(log, [&] {
    const SimConfig config = load_config(config_path);
    if (!config.sweep || config.sweep->cutoffs.empty()) {
      throw Error(ErrorCode::InvalidInput, "sweep needs a non-empty sweep.cutoffs list");
    }
    const SweepSpec& sweep = *config.sweep;
    const GelationReport report = cutoff_sweep(config, sweep.cutoffs, sweep.epsilon,
                                               sweep.resolution, resolve_workers(opts.workers));

    std::filesystem::create_directories(opts.out);
    std::size_t succeeded = 0;
    for (const auto& row : report.table) {
      if (row.ok()) ++succeeded;
      if (!row.result) continue;
      const SimConfig row_config = sweep_row_config(config, row.R, sweep.resolution);
      write_run(opts.out / ("R_" + format_number(row.R)), row_config, *row.result, "sweep");
    }
    write_text(opts.out / "sweep.csv", sweep_csv(report));
    write_text(opts.out / "sweep.json", sweep_json(report).dump(2) + "\n");
    if (!opts.quiet) {
      for (const auto& row : report.table) {
        log << "R=" << row.R << " N=" << row.N << " t_loss="
            << (row.t_loss ? format_number(*row.t_loss) : std::string("not-reached"))
            << " gel_fraction_final=" << row.gel_fraction_final
            << (row.ok() ? "" : " error: " + row.error) << "\n";
      }
    }
    return static_cast<int>(succeeded > 0 ? kOk : kNumericalFailure);
  });
}

int cmd_check(const std::filesystem::path& target, const Options& opts, std::ostream& log) {
  return guarded(log, [&] {
    const CheckReport report = run_checks(target);
    const json j = report.to_json();
    std::filesystem::create_directories(opts.out);
    write_text(opts.out / "check_report.json", j.dump(2) + "\n");
    if (!opts.quiet) log << j.dump(2) << "\n";
    return static_cast<int>(report.passed() ? kOk : kCheckFailure);
  });
}

}  // namespace ohs::cli
