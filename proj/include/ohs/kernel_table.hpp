#pragma once

#include <cstddef>
#include <vector>

#include "ohs/grid.hpp"
#include "ohs/kernels.hpp"

namespace ohs {

/// Kernel values at every pair of grid midpoints, row-major and symmetric.
class KernelTable {
 public:
  KernelTable(const KernelSpec& kernel, const SizeGrid& grid);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const double* row(std::size_t i) const { return values_.data() + i * n_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

}  // namespace ohs
