#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epk/layout.hpp"
#include "epk/perturbation.hpp"

namespace epk {

/// Boolean mask over a layout's total dimension.
struct SparsityMask {
  int dim = 0;
  std::vector<std::vector<bool>> fixed_ones;  // intra-block superdiagonal
  std::vector<std::vector<bool>> stars;       // free entries

  int star_count() const;
  std::vector<Position> star_positions() const;
};

/// Stars at every block-local strictly-lower position, i.e. every entry whose
/// rescaling power Λ^(m-n-1) is non-negative.
SparsityMask sparse_template(const PartitionLayout& layout);

/// Stars only at block-local m - n = 1 (the Λ^0 entries).
SparsityMask dominant_template(const PartitionLayout& layout);

/// (L^2 + L - 2) / 2, the dimension of the [2, 3, ..., L] chain.
int truncated_dimension(int max_block);

/// Entry in block (P, Q) at local (m, n) scaled by Λ^(m-n-1).
ComplexMatrix rescale_partitioned(const ComplexMatrix& w, const PartitionLayout& layout, double cutoff);

/// Keeps block-locally strictly-lower entries only.
ComplexMatrix leading_order_partitioned(const ComplexMatrix& m, const PartitionLayout& layout, double cutoff);

class PartitionedFundamental {
 public:
  explicit PartitionedFundamental(PartitionLayout layout);

  const PartitionLayout& layout() const { return layout_; }
  const std::map<Position, double>& entries() const { return entries_; }

  /// Throws std::invalid_argument outside the star mask.
  void set(Position p, double value);
  double get(Position p) const;
  void add(Position p, double delta) { set(p, get(p) + delta); }

 private:
  PartitionLayout layout_;
  SparsityMask mask_;
  std::map<Position, double> entries_;
};

/// Fixed ones plus the stored coefficients.
ComplexMatrix realize_partitioned_fundamental(const PartitionedFundamental& f);

/// Named entries of the two published ansatz matrices.
/// C^(2+3): a..h.   C^(2+3+4): a b c d e f h j l o m n u q s x w (w is ω).
const std::map<std::string, Position>& c23_positions();
const std::map<std::string, Position>& c234_positions();

PartitionedFundamental make_c23(const std::map<std::string, double>& values);
PartitionedFundamental make_c234(const std::map<std::string, double>& values);

/// Falsifiable check of the leading-order unitarity conjecture for one
/// partitioned fundamental matrix: real non-degenerate spectrum, then
/// deviations must shrink along the λ list.
struct ConjectureCheck {
  std::string label;
  bool fundamental_real_nondegenerate = false;
  bool deviations_decrease = false;
  std::vector<double> deviations;
  bool supported() const { return fundamental_real_nondegenerate && deviations_decrease; }
};

ConjectureCheck check_conjecture(const std::string& label, const PartitionedFundamental& f,
                                 const std::vector<double>& lambdas, const std::optional<ComplexMatrix>& correction,
                                 const ToleranceConfig& tol = {});

}  // namespace epk
