#include "epk/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "epk/errors.hpp"
#include "epk/hamiltonian.hpp"

namespace epk {

ComplexMatrix jordan_matrix(const JordanSpec& spec) {
  int n = 0;
  for (const auto& b : spec) {
    if (b.size < 1) throw std::invalid_argument("Jordan block size must be >= 1");
    n += b.size;
  }
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  int o = 0;
  for (const auto& b : spec) {
    for (int i = 0; i < b.size; ++i) {
      j(o + i, o + i) = b.eta;
      if (i + 1 < b.size) j(o + i, o + i + 1) = 1.0;
    }
    o += b.size;
  }
  return j;
}

SimilarityCheck verify_similarity(const ComplexMatrix& h, const ComplexMatrix& q, const ComplexMatrix& j, double tol) {
  if (h.rows() != h.cols() || q.rows() != q.cols() || j.rows() != j.cols() || h.rows() != q.rows() ||
      h.rows() != j.rows())
    throw std::invalid_argument("verify_similarity: H, Q, J must be square of equal dimension");
  const double residual = max_abs(h * q - q * j);
  return {residual <= tol, residual};
}

JordanDecomposition bh_transition_matrix(int k, double min_det) {
  if (k < 2) throw std::invalid_argument("K must be >= 2");
  const ExtendedMatrix h = build_sub_hamiltonian_extended({1.0, 1.0, 0.0, k - 1});

  // Columns H^(K-1) e0, ..., H e0, e0.
  ExtendedMatrix q = ExtendedMatrix::Zero(k, k);
  q(0, k - 1) = ExtendedComplex(Extended(1));
  for (int col = k - 2; col >= 0; --col) q.col(col) = h * q.col(col + 1);

  if (k >= 4) {
    Extended norm(0);
    for (int r = 0; r < k; ++r) norm += q(r, 0).real() * q(r, 0).real() + q(r, 0).imag() * q(r, 0).imag();
    norm = boost::multiprecision::sqrt(norm);
    q /= ExtendedComplex(norm);
  }

  JordanDecomposition d;
  d.q = to_double(q);
  d.j = jordan_matrix({{k, Complex(0.0, 0.0)}});
  // Hadamard ratio |det Q| / prod |q_i|: unchanged by rescaling the chain.
  double column_norms = 1.0;
  for (int c = 0; c < k; ++c) column_norms *= d.q.col(c).norm();
  const double ratio = std::abs(d.q.partialPivLu().determinant()) / column_norms;
  if (!(ratio >= min_det))
    throw SingularTransition("transition matrix for K=" + std::to_string(k) + " is numerically singular: |det Q| / prod|q_i| = " +
                             std::to_string(ratio) + " below " + std::to_string(min_det));
  d.residual = verify_similarity(build_sub_hamiltonian({1.0, 1.0, 0.0, k - 1}), d.q, d.j, 0.0).residual;
  return d;
}

EpOrderEstimate ep_order_estimate(const ComplexMatrix& h, Complex eta, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("ep_order_estimate needs a square matrix");
  const int n = static_cast<int>(h.rows());
  const ComplexMatrix a = h - eta * ComplexMatrix::Identity(n, n);

  Eigen::BDCSVD<ComplexMatrix> svd_a(a);
  const double sigma_max = svd_a.singularValues()(0);

  EpOrderEstimate est;
  est.ranks.push_back(n);
  ComplexMatrix power = ComplexMatrix::Identity(n, n);
  for (int p = 1; p <= n; ++p) {
    power = power * a;
    const double threshold = tol * std::pow(sigma_max, p);
    int rank = 0;
    if (sigma_max > 0.0) {
      Eigen::BDCSVD<ComplexMatrix> svd(power);
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()(i);
        if (s > threshold) ++rank;
        if (s > threshold * 1e-2 && s < threshold * 1e2) est.indeterminate = true;
      }
    }
    est.ranks.push_back(rank);
    if (rank == 0 || rank == est.ranks[p - 1]) break;
  }

  // Blocks of size >= p number r_{p-1} - r_p.
  const auto& r = est.ranks;
  for (std::size_t p = 1; p < r.size(); ++p) {
    const int at_least_p = r[p - 1] - r[p];
    const int at_least_next = p + 1 < r.size() ? r[p] - r[p + 1] : 0;
    for (int i = 0; i < at_least_p - at_least_next; ++i) est.block_sizes.push_back(static_cast<int>(p));
  }
  std::sort(est.block_sizes.rbegin(), est.block_sizes.rend());
  return est;
}

}  // namespace epk
