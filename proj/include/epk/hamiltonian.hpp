#pragma once

#include <vector>

#include "epk/matrix.hpp"

namespace epk {

/// Two-mode Bose-Hubbard parameters at fixed boson number N (K = N + 1).
struct BoseHubbardParams {
  double gamma = 0.0;  // on-site gain/loss
  double v = 1.0;      // tunneling
  double c = 0.0;      // boson-boson coupling
  int n = 1;           // boson number

  int dim() const { return n + 1; }
};

/// Fixed-N sector matrix H^(K)(γ, v, c), basis ordered by k = 0..N:
///   H_kk     = -i γ (N - 2k) + (c/2) (N - 2k)^2
///   H_k,k+1  = H_k+1,k = v sqrt((k+1)(N-k))
ComplexMatrix build_sub_hamiltonian(const BoseHubbardParams& p);

/// Same matrix built in 50-digit arithmetic (square roots included).
ExtendedMatrix build_sub_hamiltonian_extended(const BoseHubbardParams& p);

/// Direct sum of the v = 1, c = 0 sectors N = 1..n_max.
/// Dimension (n_max^2 + 3 n_max) / 2.
ComplexMatrix build_block_hamiltonian(int n_max, double gamma);

/// diag(N repeated N+1 times) for N = 1..n_max.
ComplexMatrix number_operator_matrix(int n_max);

/// E_n = sqrt(1 - γ^2) (1 - K + 2n), n = 0..K-1; complex once γ^2 > 1.
std::vector<Complex> exact_energies(int k, double gamma);

}  // namespace epk
