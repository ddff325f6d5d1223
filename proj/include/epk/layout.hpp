#pragma once

#include <utility>
#include <vector>

#include "epk/matrix.hpp"

namespace epk {

/// Ordered block dimensions [K_1, K_2, ...] of a boson-number partition.
/// Each block is one fixed-N sector with K_i = N_i + 1.
class PartitionLayout {
 public:
  explicit PartitionLayout(std::vector<int> dims);

  /// [2, 3, ..., L]
  static PartitionLayout chain(int max_block);
  static PartitionLayout single(int k) { return PartitionLayout({k}); }

  const std::vector<int>& dims() const { return dims_; }
  int blocks() const { return static_cast<int>(dims_.size()); }
  int total() const { return offsets_.back(); }
  int offset(int block) const { return offsets_[block]; }

  /// (block, local index) of a global index.
  std::pair<int, int> locate(int index) const;

  /// Power of Λ acquired by entry (r, c) under the block-diagonal
  /// G-conjugation: local_row - local_col - 1.
  int rescale_power(int row, int col) const;

  /// Two-block [M, L] with M < L, or a chain [2, 3, ..., L].
  bool covered_by_examples() const;

  bool operator==(const PartitionLayout&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
};

/// Block-diagonal direct sum of Jordan blocks J^(K_i)(η).
ComplexMatrix partitioned_jordan(const PartitionLayout& layout, Complex eta);

/// diag(G^(K_1)(Λ), G^(K_2)(Λ), ...).
ComplexMatrix block_scaling_matrix(const PartitionLayout& layout, double cutoff);

}  // namespace epk
