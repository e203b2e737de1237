#include "ohs/grid.hpp"

#include <cmath>

#include "ohs/error.hpp"

namespace ohs {

SizeGrid::SizeGrid(std::vector<double> edges) : edges_(std::move(edges)) {
  const std::size_t n = edges_.size() - 1;
  midpoints_.resize(n);
  widths_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    midpoints_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
    widths_[i] = edges_[i + 1] - edges_[i];
  }
}

SizeGrid SizeGrid::build(GridKind kind, double R, std::size_t cells, std::optional<double> ratio) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::InvalidInput, "cutoff R must be positive");
  if (cells < 2) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 cells");

  std::vector<double> edges(cells + 1);
  edges[0] = 0.0;
  if (kind == GridKind::Uniform) {
    for (std::size_t i = 1; i < cells; ++i) {
      edges[i] = R * static_cast<double>(i) / static_cast<double>(cells);
    }
  } else {
    if (!ratio || !(*ratio > 1.0) || !std::isfinite(*ratio)) {
      throw Error(ErrorCode::InvalidInput, "geometric grid needs ratio q > 1");
    }
    const double q = *ratio;
    // First width w with w (q^N - 1) / (q - 1) = R.
    double width = R * (q - 1.0) / (std::pow(q, static_cast<double>(cells)) - 1.0);
    if (!(width > 0.0)) throw Error(ErrorCode::InvalidInput, "geometric grid underflows");
    for (std::size_t i = 1; i < cells; ++i) {
      edges[i] = edges[i - 1] + width;
      width *= q;
    }
  }
  edges[cells] = R;
  return from_edges(std::move(edges));
}

SizeGrid SizeGrid::from_edges(std::vector<double> edges) {
  if (edges.size() < 3) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 cells");
  if (edges.front() != 0.0) throw Error(ErrorCode::InvalidInput, "first edge must be 0");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i]) || !(edges[i] > edges[i - 1])) {
      throw Error(ErrorCode::InvalidInput, "grid edges must be finite and strictly increasing");
    }
  }
  return SizeGrid(std::move(edges));
}

bool SizeGrid::is_geometric(double* ratio) const {
  const double q = widths_[1] / widths_[0];
  if (!(q > 1.0)) return false;
  for (std::size_t i = 1; i < widths_.size(); ++i) {
    if (std::abs(widths_[i] - q * widths_[i - 1]) > 1e-12 * widths_[i]) return false;
  }
  if (ratio) *ratio = q;
  return true;
}

}  // namespace ohs
