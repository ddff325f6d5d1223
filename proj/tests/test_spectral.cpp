#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "epk/boundary.hpp"
#include "epk/errors.hpp"
#include "epk/hamiltonian.hpp"
#include "epk/jordan.hpp"
#include "epk/perturbation.hpp"
#include "epk/spectral.hpp"

using namespace epk;

namespace {

ComplexMatrix swap2() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("eigenvalues of small fixed matrices") {
  const auto e = eigenvalues(swap2());
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(e[1] - Complex(1, 0)) < 1e-14);

  const auto h = eigenvalues(build_sub_hamiltonian({0.5, 1.0, 0.0, 2}));
  CHECK(std::abs(h[0] - Complex(-std::sqrt(3.0), 0)) < 1e-13);
  CHECK(std::abs(h[1]) < 1e-13);
  CHECK(std::abs(h[2] - Complex(std::sqrt(3.0), 0)) < 1e-13);

  for (const auto& z : eigenvalues(jordan_matrix({{4, 0.0}}))) CHECK(std::abs(z) < 1e-14);
}

TEST_CASE("eigenvalues sorted by real then imaginary part") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m.diagonal() << Complex(1, 1), Complex(-2, 0), Complex(1, -1), Complex(0.5, 3);
  const auto e = eigenvalues(m);
  CHECK(e[0] == Complex(-2, 0));
  CHECK(e[1] == Complex(0.5, 3));
  CHECK(e[2] == Complex(1, -1));
  CHECK(e[3] == Complex(1, 1));
}

TEST_CASE("extended and double eigensolves agree on a well-conditioned matrix") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  ComplexMatrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) m(r, c) = Complex(u(rng), u(rng));
  CHECK(multiset_distance(eigenvalues(m), eigenvalues(to_extended(m))) < 1e-12);
}

TEST_CASE("eigenvalue input validation") {
  CHECK_THROWS_AS(eigenvalues(ComplexMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues(ComplexMatrix(0, 0)), std::invalid_argument);
  ComplexMatrix bad = swap2();
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("classification examples") {
  CHECK(classify_spectrum({-1.0, 0.0, 1.0}).classification == Classification::RealNonDegenerate);
  CHECK(classify_spectrum(std::vector<Complex>(5, 0.0)).classification == Classification::RealDegenerate);
  CHECK(classify_spectrum({Complex(0, 1), Complex(0, -1)}).classification == Classification::Complex);

  const auto single = classify_spectrum({2.0});
  CHECK(std::isinf(single.min_gap));
  CHECK(single.classification == Classification::RealNonDegenerate);
  CHECK_THROWS_AS(classify_spectrum({}), std::invalid_argument);
}

TEST_CASE("classification thresholds follow the stored tolerances") {
  ToleranceConfig tol;
  // ρ = 1: imaginary threshold 2e-10, gap threshold 1e-8.
  CHECK(classify_spectrum({Complex(-1, 0), Complex(1, 1.5e-10)}, tol).classification ==
        Classification::RealNonDegenerate);
  CHECK(classify_spectrum({Complex(-1, 0), Complex(1, 2.5e-10)}, tol).classification == Classification::Complex);
  CHECK(classify_spectrum({-1.0, 0.5, 0.5 + 0.9e-8}, tol).classification == Classification::RealDegenerate);
  CHECK(classify_spectrum({-1.0, 0.5, 0.5 + 1.1e-8}, tol).classification == Classification::RealNonDegenerate);
  const auto r = classify_spectrum({Complex(3, 0), Complex(-1, 0)}, tol);
  CHECK(r.tolerances == tol);
  CHECK(r.spectral_radius == 3.0);
  CHECK(r.min_gap == 4.0);
}

TEST_CASE("classification is scale-consistent when relative tolerances dominate") {
  ToleranceConfig tol{0.0, 1e-10, 1e-8};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> eps;
    for (int i = 0; i < 5; ++i) eps.emplace_back(u(rng), trial % 3 == 0 ? 1e-3 * u(rng) : 0.0);
    eps.push_back(4.0);  // keeps ρ >= 1 so the gap threshold is relative
    if (trial % 7 == 0) eps.push_back(eps[0]);
    const auto base = classify_spectrum(eps, tol).classification;
    for (double s : {1.0, 2.5, 10.0, 1e3}) {
      std::vector<Complex> scaled;
      for (const auto& e : eps) scaled.push_back(s * e);
      CHECK(classify_spectrum(scaled, tol).classification == base);
    }
  }
}

TEST_CASE("physical domain examples") {
  CHECK(in_physical_domain(realize_fundamental(FundamentalMatrix::kronecker_delta(5))));
  CHECK_FALSE(in_physical_domain(solution_A(1, 1, 1, 1).c));
  CHECK_FALSE(in_physical_domain(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("spectra of real fundamental matrices are closed under conjugation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 2; k <= 8; ++k)
    for (int trial = 0; trial < 20; ++trial) {
      FundamentalMatrix c(k);
      for (auto [j, m] : c.indices()) c.set_coeff(j, m, u(rng));
      const auto e = eigenvalues(realize_fundamental(c));
      std::vector<Complex> conj;
      for (const auto& z : e) conj.push_back(std::conj(z));
      double rho = 1.0;
      for (const auto& z : e) rho = std::max(rho, std::abs(z));
      CHECK(multiset_distance(e, conj) <= 1e-10 * rho);
    }
}

TEST_CASE("exact-polynomial eigenvalues keep exact zero multiplicity") {
  int zeros = -1;
  const auto j = eigenvalues_via_exact_polynomial(jordan_matrix({{5, 0.0}}), &zeros);
  CHECK(zeros == 5);
  for (const auto& z : j) CHECK(z == Complex(0, 0));

  const auto e = eigenvalues_via_exact_polynomial(realize_fundamental(FundamentalMatrix::kronecker_delta(4)), &zeros);
  CHECK(zeros == 0);
  CHECK(multiset_distance(e, eigenvalues(realize_fundamental(FundamentalMatrix::kronecker_delta(4)))) < 1e-13);

  ComplexMatrix complex_entry = swap2();
  complex_entry(0, 1) = Complex(0, 1);
  CHECK_THROWS_AS(eigenvalues_via_exact_polynomial(complex_entry), std::invalid_argument);
}

TEST_CASE("modulus ordering pairs conjugates and opposite roots deterministically") {
  const std::vector<Complex> a = {Complex(0, 1), Complex(1, 0), Complex(0, -1), Complex(-1, 0), 0.0};
  const auto o = modulus_order(a);
  CHECK(o[0] == Complex(0, 0));
  CHECK(o[1] == Complex(-1, 0));
  CHECK(o[2] == Complex(0, -1));
  CHECK(o[3] == Complex(0, 1));
  CHECK(o[4] == Complex(1, 0));
  CHECK(multiset_distance(a, {Complex(1, 0), 0.0, Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) == 0.0);
  CHECK_THROWS_AS(multiset_distance(a, {0.0}), std::invalid_argument);
}

TEST_CASE("matrix hash is stable and content-sensitive") {
  ComplexMatrix a = swap2();
  ComplexMatrix b = swap2();
  CHECK(matrix_hash(a) == matrix_hash(b));
  b(1, 1) = 1e-300;
  CHECK(matrix_hash(a) != matrix_hash(b));
  CHECK(matrix_hash(a).size() == 16);
  const EigensolverFailure failure("no convergence", matrix_hash(a));
  CHECK(failure.matrix_hash() == matrix_hash(a));
  CHECK(std::string(failure.what()).find(matrix_hash(a)) != std::string::npos);
}
