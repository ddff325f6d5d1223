#include "epk/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace epk {

namespace {

void check(const BoseHubbardParams& p) {
  if (p.n < 1) throw std::invalid_argument("boson number N must be >= 1, got " + std::to_string(p.n));
  if (p.v == 0.0) throw std::invalid_argument("tunneling v must be non-zero");
  if (!std::isfinite(p.gamma) || !std::isfinite(p.v) || !std::isfinite(p.c))
    throw std::invalid_argument("Bose-Hubbard parameters must be finite");
}

}  // namespace

ComplexMatrix build_sub_hamiltonian(const BoseHubbardParams& p) {
  check(p);
  const int n = p.n;
  ComplexMatrix h = ComplexMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double s = n - 2 * k;
    h(k, k) = Complex(0.5 * p.c * s * s, -p.gamma * s);
    if (k < n) {
      const double t = p.v * std::sqrt(static_cast<double>((k + 1) * (n - k)));
      h(k, k + 1) = t;
      h(k + 1, k) = t;
    }
  }
  return h;
}

ExtendedMatrix build_sub_hamiltonian_extended(const BoseHubbardParams& p) {
  check(p);
  const int n = p.n;
  const Extended gamma(p.gamma), v(p.v), c(p.c);
  ExtendedMatrix h = ExtendedMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const Extended s(n - 2 * k);
    h(k, k) = ExtendedComplex(c * s * s / 2, -gamma * s);
    if (k < n) {
      const Extended t = v * boost::multiprecision::sqrt(Extended((k + 1) * (n - k)));
      h(k, k + 1) = ExtendedComplex(t);
      h(k + 1, k) = ExtendedComplex(t);
    }
  }
  return h;
}

ComplexMatrix build_block_hamiltonian(int n_max, double gamma) {
  if (n_max < 1) throw std::invalid_argument("N_max must be >= 1");
  const int dim = (n_max * n_max + 3 * n_max) / 2;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  int offset = 0;
  for (int n = 1; n <= n_max; ++n) {
    h.block(offset, offset, n + 1, n + 1) = build_sub_hamiltonian({gamma, 1.0, 0.0, n});
    offset += n + 1;
  }
  return h;
}

ComplexMatrix number_operator_matrix(int n_max) {
  if (n_max < 1) throw std::invalid_argument("N_max must be >= 1");
  const int dim = (n_max * n_max + 3 * n_max) / 2;
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  int offset = 0;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k, ++offset) op(offset, offset) = static_cast<double>(n);
  return op;
}

std::vector<Complex> exact_energies(int k, double gamma) {
  if (k < 2) throw std::invalid_argument("K must be >= 2");
  const Complex root = std::sqrt(Complex(1.0 - gamma * gamma, 0.0));
  std::vector<Complex> e;
  for (int n = 0; n < k; ++n) e.push_back(root * static_cast<double>(1 - k + 2 * n));
  return e;
}

}  // namespace epk
