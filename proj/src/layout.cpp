#include "epk/layout.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epk {

PartitionLayout::PartitionLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("layout needs at least one block");
  offsets_.assign(1, 0);
  for (int k : dims_) {
    if (k < 2) throw std::invalid_argument("layout block dimension must be >= 2, got " + std::to_string(k));
    offsets_.push_back(offsets_.back() + k);
  }
}

PartitionLayout PartitionLayout::chain(int max_block) {
  if (max_block < 2) throw std::invalid_argument("chain layout needs L >= 2");
  std::vector<int> dims;
  for (int k = 2; k <= max_block; ++k) dims.push_back(k);
  return PartitionLayout(std::move(dims));
}

std::pair<int, int> PartitionLayout::locate(int index) const {
  if (index < 0 || index >= total()) throw std::out_of_range("index outside layout");
  int block = 0;
  while (offsets_[block + 1] <= index) ++block;
  return {block, index - offsets_[block]};
}

int PartitionLayout::rescale_power(int row, int col) const {
  return locate(row).second - locate(col).second - 1;
}

bool PartitionLayout::covered_by_examples() const {
  if (dims_.size() == 1) return true;
  if (dims_.size() == 2) return dims_[0] < dims_[1];
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (dims_[i] != static_cast<int>(i) + 2) return false;
  return true;
}

ComplexMatrix partitioned_jordan(const PartitionLayout& layout, Complex eta) {
  const int n = layout.total();
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (int b = 0; b < layout.blocks(); ++b) {
    const int o = layout.offset(b);
    const int k = layout.dims()[b];
    for (int i = 0; i < k; ++i) {
      j(o + i, o + i) = eta;
      if (i + 1 < k) j(o + i, o + i + 1) = 1.0;
    }
  }
  return j;
}

ComplexMatrix block_scaling_matrix(const PartitionLayout& layout, double cutoff) {
  if (!(cutoff > 0)) throw std::invalid_argument("cut-off Λ must be positive");
  const int n = layout.total();
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = std::pow(cutoff, layout.locate(i).second);
  return g;
}

}  // namespace epk
