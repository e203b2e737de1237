#include "ohs/io.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "ohs/config_json.hpp"
#include "ohs/error.hpp"

namespace ohs {

using nlohmann::json;

namespace {

std::string label(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

}  // namespace

std::string format_number(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  return os.str();
}

std::string moments_csv(const MomentSeries& series) {
  std::ostringstream os;
  os << "t,M0,M1";
  for (double r : series.orders) os << ",M" << label(r);
  for (double m : series.thresholds) os << ",M1_ge_" << label(m);
  os << ",gel_mass,clamped_mass\n";
  for (const auto& rec : series.records) {
    os << format_number(rec.t) << ',' << format_number(rec.M0) << ',' << format_number(rec.M1);
    for (double v : rec.higher) os << ',' << format_number(v);
    for (double v : rec.truncated) os << ',' << format_number(v);
    os << ',' << format_number(rec.gel_mass) << ',' << format_number(rec.clamped_mass) << '\n';
  }
  return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidInput, "csv has no column " + name);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::InvalidInput, "csv row width does not match its header");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      std::istringstream cs(c);
      cs.imbue(std::locale::classic());
      double v = 0.0;
      if (!(cs >> v)) throw Error(ErrorCode::InvalidInput, "non-numeric csv cell \"" + c + "\"");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw Error(ErrorCode::InvalidInput, "empty csv");
  return table;
}

json state_to_json(const State& state) {
  const auto edges = state.grid->edges();
  return json{{"t", state.t},
              {"gel_mass", state.gel_mass},
              {"clamped_mass", state.clamped_mass},
              {"edges", std::vector<double>(edges.begin(), edges.end())},
              {"xi", state.xi}};
}

json manifest_json(const SimConfig& config, const RunResult& result, const std::string& command) {
  const auto edges = result.final_state.grid->edges();
  json j{{"version", kVersion},
         {"command", command},
         {"config", config_to_json(config)},
         {"grid_edges", std::vector<double>(edges.begin(), edges.end())},
         {"steps", result.steps},
         {"records", result.series.records.size()},
         {"status", result.ok() ? "ok" : "failed"}};
  if (!result.ok()) {
    j["failure"] = {{"code", to_string(*result.failure)}, {"message", result.failure_message}};
  }
  return j;
}

void write_run(const std::filesystem::path& dir, const SimConfig& config, const RunResult& result,
               const std::string& command) {
  std::filesystem::create_directories(dir);
  write_text(dir / "moments.csv", moments_csv(result.series));
  write_text(dir / "final_state.json", state_to_json(result.final_state).dump(2) + "\n");
  write_text(dir / "manifest.json", manifest_json(config, result, command).dump(2) + "\n");
}

std::string sweep_csv(const GelationReport& report) {
  std::ostringstream os;
  os << "R,N,t_loss,gel_fraction_final\n";
  for (const auto& row : report.table) {
    os << format_number(row.R) << ',' << row.N << ',';
    if (row.t_loss) os << format_number(*row.t_loss);
    os << ',' << format_number(row.gel_fraction_final) << '\n';
  }
  return os.str();
}

json sweep_json(const GelationReport& report) {
  json rows = json::array();
  for (const auto& row : report.table) {
    json r{{"R", row.R}, {"N", row.N}, {"gel_fraction_final", row.gel_fraction_final}};
    r["t_loss"] = row.t_loss ? json(*row.t_loss) : json(nullptr);
    r["status"] = row.ok() ? "ok" : "failed";
    if (!row.ok()) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  json bounds = json::array();
  for (const auto& b : report.bound_evaluations) {
    bounds.push_back({{"R", b.R}, {"r", b.r}, {"delta", b.delta}, {"Mr_delta", b.Mr_delta}, {"bound", b.bound}});
  }
  return json{{"version", kVersion}, {"epsilon", report.epsilon}, {"rows", rows}, {"bound_evaluations", bounds}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace ohs
