#pragma once

#include <vector>

#include "epk/matrix.hpp"

namespace epk {

struct JordanBlock {
  int size = 1;
  Complex eta{0.0, 0.0};
};

using JordanSpec = std::vector<JordanBlock>;

/// Block-diagonal, each block with η on the diagonal and 1 on the superdiagonal.
ComplexMatrix jordan_matrix(const JordanSpec& spec);

/// Witness of H = Q J Q^-1, certified by residual = max|H Q - Q J|.
struct JordanDecomposition {
  ComplexMatrix q;
  ComplexMatrix j;
  double residual = 0.0;
};

struct SimilarityCheck {
  bool holds = false;
  double residual = 0.0;
};

/// max|H Q - Q J| <= tol. No inverse of Q is formed.
SimilarityCheck verify_similarity(const ComplexMatrix& h, const ComplexMatrix& q, const ComplexMatrix& j, double tol);

/// Transition matrix of the Bose-Hubbard sector at its exceptional point γ = 1:
/// columns are the Jordan chain H^(K-1) e0, ..., H e0, e0 computed in 50-digit
/// arithmetic. K = 2, 3 keep that normalization; from K = 4 on the chain is
/// divided by the 2-norm of its kernel column to keep entries O(1).
/// Throws SingularTransition if the Hadamard ratio |det Q| / prod |q_i| falls
/// below min_det.
JordanDecomposition bh_transition_matrix(int k, double min_det = 1e-12);

struct EpOrderEstimate {
  std::vector<int> block_sizes;  // descending
  std::vector<int> ranks;        // rank of (H - ηI)^p, p = 0, 1, ...
  bool indeterminate = false;    // some singular value fell within two decades of a threshold
};

/// Jordan block sizes at η from the rank sequence of (H - ηI)^p. A singular
/// value of (H - ηI)^p counts toward the rank when it exceeds
/// tol * sigma_max(H - ηI)^p.
EpOrderEstimate ep_order_estimate(const ComplexMatrix& h, Complex eta, double tol = 1e-8);

}  // namespace epk
