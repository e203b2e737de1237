#include "ohs/config_json.hpp"

#include <fstream>

#include "ohs/error.hpp"

namespace ohs {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

std::string kind_of(const json& j, const char* section) {
  if (!j.is_object() || !j.contains("kind")) invalid(std::string(section) + " needs a \"kind\"");
  return j.at("kind").get<std::string>();
}

Perturbation psi_from_string(const std::string& s) {
  if (s == "zero") return Perturbation::Zero;
  if (s == "half_sum") return Perturbation::HalfSum;
  if (s == "min") return Perturbation::Min;
  invalid("unknown psi \"" + s + "\"");
}

const char* psi_name(Perturbation p) {
  switch (p) {
    case Perturbation::Zero: return "zero";
    case Perturbation::HalfSum: return "half_sum";
    case Perturbation::Min: return "min";
  }
  return "zero";
}

InitialConditionSpec ic_from_json(const json& j) {
  const std::string kind = kind_of(j, "initial_condition");
  if (kind == "bagland") return ic::Bagland{get_or(j, "M", 1.0)};
  if (kind == "uniform_on") {
    return ic::UniformOn{j.at("a").get<double>(), j.at("b").get<double>(), get_or(j, "mass", 1.0)};
  }
  if (kind == "cell_spike") {
    return ic::CellSpike{j.at("index").get<std::size_t>(), get_or(j, "mass", 1.0)};
  }
  if (kind == "table") {
    return ic::Table{j.at("edges").get<std::vector<double>>(), j.at("values").get<std::vector<double>>()};
  }
  invalid("unknown initial_condition kind \"" + kind + "\"");
}

json ic_to_json(const InitialConditionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ic::Bagland& b) { return json{{"kind", "bagland"}, {"M", b.M}}; },
          [](const ic::UniformOn& u) {
            return json{{"kind", "uniform_on"}, {"a", u.a}, {"b", u.b}, {"mass", u.total_mass}};
          },
          [](const ic::CellSpike& s) {
            return json{{"kind", "cell_spike"}, {"index", s.index}, {"mass", s.total_mass}};
          },
          [](const ic::Table& t) {
            return json{{"kind", "table"}, {"edges", t.edges}, {"values", t.values}};
          },
      },
      spec);
}

}  // namespace

KernelSpec kernel_from_json(const json& j) {
  KernelSpec spec;
  const std::string kind = kind_of(j, "kernel");
  if (kind == "constant") {
    spec.kind = kernel::Constant{get_or(j, "value", 1.0)};
  } else if (kind == "power_sum") {
    spec.kind = kernel::PowerSum{get_or(j, "theta1", 1.0), j.at("beta").get<double>()};
  } else if (kind == "mass_conserving") {
    spec.kind = kernel::MassConservingFamily{get_or(j, "theta1", 1.0), j.at("beta").get<double>(),
                                             psi_from_string(get_or<std::string>(j, "psi", "zero")),
                                             get_or(j, "K", 0.0)};
  } else if (kind == "product") {
    spec.kind = kernel::Product{j.at("exponent").get<double>()};
  } else {
    invalid("unknown kernel kind \"" + kind + "\"");
  }
  if (j.contains("certification")) {
    const json& c = j.at("certification");
    spec.cert = CertificationParams{c.at("theta1").get<double>(), c.at("theta2").get<double>(),
                                    c.at("beta").get<double>(), c.at("gamma").get<double>()};
  }
  return spec;
}

json kernel_to_json(const KernelSpec& kernel) {
  json j = std::visit(
      Overloaded{
          [](const kernel::Constant& k) { return json{{"kind", "constant"}, {"value", k.value}}; },
          [](const kernel::PowerSum& k) {
            return json{{"kind", "power_sum"}, {"theta1", k.theta1}, {"beta", k.beta}};
          },
          [](const kernel::MassConservingFamily& k) {
            return json{{"kind", "mass_conserving"}, {"theta1", k.theta1}, {"beta", k.beta},
                        {"psi", psi_name(k.psi)},   {"K", k.K}};
          },
          [](const kernel::Product& k) { return json{{"kind", "product"}, {"exponent", k.exponent}}; },
      },
      kernel.kind);
  if (kernel.cert) {
    j["certification"] = {{"theta1", kernel.cert->theta1},
                          {"theta2", kernel.cert->theta2},
                          {"beta", kernel.cert->beta},
                          {"gamma", kernel.cert->gamma}};
  }
  return j;
}

SimConfig config_from_json(const json& j) {
  try {
    if (!j.is_object()) invalid("config must be a JSON object");
    SimConfig c;
    if (j.contains("kernel")) c.kernel = kernel_from_json(j.at("kernel"));
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      const std::string kind = get_or<std::string>(g, "kind", "uniform");
      if (kind == "uniform") {
        c.grid.kind = GridKind::Uniform;
      } else if (kind == "geometric") {
        c.grid.kind = GridKind::Geometric;
      } else {
        invalid("unknown grid kind \"" + kind + "\"");
      }
      c.grid.R = get_or(g, "R", c.grid.R);
      const auto n = get_or<long long>(g, "N", static_cast<long long>(c.grid.N));
      if (n < 2) invalid("grid.N must be at least 2");
      c.grid.N = static_cast<std::size_t>(n);
      if (g.contains("q") && !g.at("q").is_null()) c.grid.q = g.at("q").get<double>();
    }
    if (j.contains("initial_condition")) c.initial_condition = ic_from_json(j.at("initial_condition"));
    c.t_end = get_or(j, "t_end", c.t_end);
    c.cfl = get_or(j, "cfl", c.cfl);
    c.record_cadence = get_or(j, "record_cadence", c.record_cadence);
    c.epsilon = get_or(j, "epsilon", c.epsilon);
    if (j.contains("dt_max") && !j.at("dt_max").is_null()) c.dt_max = j.at("dt_max").get<double>();
    c.max_steps = get_or(j, "max_steps", c.max_steps);
    const std::string scheme = get_or<std::string>(j, "scheme", "euler");
    if (scheme == "euler") {
      c.scheme = Scheme::Euler;
    } else if (scheme == "heun") {
      c.scheme = Scheme::Heun;
    } else {
      invalid("unknown scheme \"" + scheme + "\"");
    }
    if (j.contains("moments")) {
      const json& m = j.at("moments");
      c.moments.orders = get_or(m, "orders", c.moments.orders);
      c.moments.truncation_thresholds = get_or(m, "truncation_thresholds", c.moments.truncation_thresholds);
    }
    if (j.contains("sweep") && !j.at("sweep").is_null()) {
      const json& s = j.at("sweep");
      SweepSpec sweep;
      sweep.cutoffs = get_or(s, "cutoffs", sweep.cutoffs);
      sweep.epsilon = get_or(s, "epsilon", c.epsilon);
      sweep.resolution = get_or(s, "resolution", sweep.resolution);
      c.sweep = sweep;
    }
    if (j.contains("check")) {
      const json& k = j.at("check");
      c.check.residual_tolerance = get_or(k, "residual_tolerance", c.check.residual_tolerance);
      c.check.weak_form_lambda_fraction =
          get_or(k, "weak_form_lambda_fraction", c.check.weak_form_lambda_fraction);
      c.check.bookkeeping_tolerance = get_or(k, "bookkeeping_tolerance", c.check.bookkeeping_tolerance);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    invalid(std::string("malformed config: ") + e.what());
  }
}

json config_to_json(const SimConfig& c) {
  json j;
  j["kernel"] = kernel_to_json(c.kernel);
  j["grid"] = {{"kind", c.grid.kind == GridKind::Uniform ? "uniform" : "geometric"},
               {"R", c.grid.R},
               {"N", c.grid.N}};
  if (c.grid.q) j["grid"]["q"] = *c.grid.q;
  j["initial_condition"] = ic_to_json(c.initial_condition);
  j["t_end"] = c.t_end;
  j["cfl"] = c.cfl;
  j["record_cadence"] = c.record_cadence;
  j["epsilon"] = c.epsilon;
  j["dt_max"] = c.resolved_dt_max();
  j["max_steps"] = c.max_steps;
  j["scheme"] = c.scheme == Scheme::Euler ? "euler" : "heun";
  j["moments"] = {{"orders", c.moments.orders},
                  {"truncation_thresholds", c.moments.truncation_thresholds}};
  if (c.sweep) {
    j["sweep"] = {{"cutoffs", c.sweep->cutoffs},
                  {"epsilon", c.sweep->epsilon},
                  {"resolution", c.sweep->resolution}};
  }
  j["check"] = {{"residual_tolerance", c.check.residual_tolerance},
                {"weak_form_lambda_fraction", c.check.weak_form_lambda_fraction},
                {"bookkeeping_tolerance", c.check.bookkeeping_tolerance}};
  return j;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    invalid("cannot parse " + path.string() + ": " + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("version")) return config_from_json(j.at("config"));
  return config_from_json(j);
}

}  // namespace ohs
