#include "ohs/initial_condition.hpp"

#include <algorithm>
#include <cmath>

#include "ohs/error.hpp"

namespace ohs {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Piece {
  double lo;
  double hi;
  double density;
};

// Every initial condition except CellSpike is a list of constant-density pieces.
std::vector<Piece> pieces_of(const InitialConditionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ic::UniformOn& u) -> std::vector<Piece> {
            if (!(u.b > u.a) || u.a < 0.0) {
              throw Error(ErrorCode::InvalidInput, "uniform_on needs 0 <= a < b");
            }
            if (!(u.total_mass > 0.0)) throw Error(ErrorCode::NonpositiveMass, "uniform_on mass");
            const double c = u.total_mass / (0.5 * (u.b * u.b - u.a * u.a));
            return {{u.a, u.b, c}};
          },
          [](const ic::Bagland& b) -> std::vector<Piece> {
            if (!(b.M > 0.0)) throw Error(ErrorCode::NonpositiveMass, "Bagland M must be positive");
            return {{0.0, b.M, 2.0 / b.M}};
          },
          [](const ic::Table& t) -> std::vector<Piece> {
            if (t.edges.size() != t.values.size() + 1 || t.values.empty()) {
              throw Error(ErrorCode::InvalidInput, "table needs edges.size() == values.size() + 1");
            }
            std::vector<Piece> out;
            for (std::size_t k = 0; k < t.values.size(); ++k) {
              if (!(t.edges[k + 1] > t.edges[k]) || t.edges[k] < 0.0) {
                throw Error(ErrorCode::InvalidInput, "table edges must increase from >= 0");
              }
              if (t.values[k] < 0.0 || !std::isfinite(t.values[k])) {
                throw Error(ErrorCode::InvalidInput, "table densities must be finite and >= 0");
              }
              if (t.values[k] > 0.0) out.push_back({t.edges[k], t.edges[k + 1], t.values[k]});
            }
            return out;
          },
          [](const ic::CellSpike&) -> std::vector<Piece> { return {}; },
      },
      spec);
}

double piece_mass(const Piece& p, double lo, double hi) {
  const double a = std::max(p.lo, lo);
  const double b = std::min(p.hi, hi);
  if (!(b > a)) return 0.0;
  return p.density * 0.5 * (b * b - a * a);
}

}  // namespace

double initial_mass(const InitialConditionSpec& spec) {
  if (const auto* s = std::get_if<ic::CellSpike>(&spec)) return s->total_mass;
  double mass = 0.0;
  for (const auto& p : pieces_of(spec)) mass += piece_mass(p, p.lo, p.hi);
  return mass;
}

State project_initial(std::shared_ptr<const SizeGrid> grid, const InitialConditionSpec& spec) {
  State state = State::empty(grid, 0.0);
  const auto mids = grid->midpoints();
  const auto widths = grid->widths();
  const auto edges = grid->edges();

  if (const auto* s = std::get_if<ic::CellSpike>(&spec)) {
    if (s->index >= grid->size()) {
      throw Error(ErrorCode::SupportOutsideDomain, "cell_spike index beyond the last cell");
    }
    if (!(s->total_mass > 0.0)) throw Error(ErrorCode::NonpositiveMass, "cell_spike mass");
    state.xi[s->index] = s->total_mass / (mids[s->index] * widths[s->index]);
    return state;
  }

  const auto pieces = pieces_of(spec);
  if (pieces.empty()) throw Error(ErrorCode::NonpositiveMass, "initial condition carries no mass");
  for (const auto& p : pieces) {
    if (p.hi > grid->cutoff()) {
      throw Error(ErrorCode::SupportOutsideDomain, "initial support extends beyond the cutoff");
    }
  }

  for (std::size_t i = 0; i < grid->size(); ++i) {
    double cell_mass = 0.0;
    for (const auto& p : pieces) cell_mass += piece_mass(p, edges[i], edges[i + 1]);
    state.xi[i] = cell_mass / (mids[i] * widths[i]);
  }
  if (!(initial_mass(spec) > 0.0)) throw Error(ErrorCode::NonpositiveMass, "initial mass");
  return state;
}

}  // namespace ohs
