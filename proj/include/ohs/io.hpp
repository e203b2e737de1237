#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ohs/config.hpp"
#include "ohs/gelation.hpp"
#include "ohs/moments.hpp"
#include "ohs/solver.hpp"
#include "ohs/state.hpp"

namespace ohs {

inline constexpr const char* kVersion = "ohs-lab 0.1.0";

/// '.' decimal point, 17 significant digits.
std::string format_number(double value);

/// Header: t, M0, M1, M<r> per order, M1_ge_<m> per threshold, gel_mass, clamped_mass.
std::string moments_csv(const MomentSeries& series);

/// Parsed moments.csv: header plus numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws InvalidInput when the column is missing.
  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

nlohmann::json state_to_json(const State& state);

nlohmann::json manifest_json(const SimConfig& config, const RunResult& result,
                             const std::string& command);

/// Writes moments.csv, final_state.json and manifest.json into dir (created if needed).
void write_run(const std::filesystem::path& dir, const SimConfig& config, const RunResult& result,
               const std::string& command = "simulate");

/// Columns R, N, t_loss, gel_fraction_final; t_loss is empty when not reached or failed.
std::string sweep_csv(const GelationReport& report);
nlohmann::json sweep_json(const GelationReport& report);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ohs
