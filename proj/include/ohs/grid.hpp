#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ohs {

enum class GridKind { Uniform, Geometric };

/// Partition 0 = e_0 < e_1 < ... < e_N = R of the truncated size domain.
/// Cells are indexed 0..N-1; cell i spans [e_i, e_{i+1}].
class SizeGrid {
 public:
  static SizeGrid build(GridKind kind, double R, std::size_t cells,
                        std::optional<double> ratio = std::nullopt);

  /// Validates and adopts an explicit edge array (e.g. read back from a manifest).
  static SizeGrid from_edges(std::vector<double> edges);

  std::size_t size() const { return widths_.size(); }
  double cutoff() const { return edges_.back(); }

  std::span<const double> edges() const { return edges_; }
  std::span<const double> midpoints() const { return midpoints_; }
  std::span<const double> widths() const { return widths_; }

  double midpoint(std::size_t i) const { return midpoints_[i]; }
  double width(std::size_t i) const { return widths_[i]; }

  /// True when consecutive widths share a common ratio q > 1 to 1e-12 relative.
  bool is_geometric(double* ratio = nullptr) const;

 private:
  explicit SizeGrid(std::vector<double> edges);

  std::vector<double> edges_;
  std::vector<double> midpoints_;
  std::vector<double> widths_;
};

}  // namespace ohs
