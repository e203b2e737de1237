#include "ohs/kernel_table.hpp"

namespace ohs {

KernelTable::KernelTable(const KernelSpec& kernel, const SizeGrid& grid)
    : n_(grid.size()), values_(n_ * n_) {
  const auto x = grid.midpoints();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = eval(kernel, x[i], x[j]);
      values_[i * n_ + j] = v;
      values_[j * n_ + i] = v;
    }
  }
}

}  // namespace ohs
