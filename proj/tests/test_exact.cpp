#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "epk/exact.hpp"
#include "oracles.hpp"

using namespace epk;
using exact::GaussianRational;
using exact::Rational;

namespace {

ComplexMatrix random_integer_matrix(std::mt19937_64& rng, int n, bool complex_entries) {
  std::uniform_int_distribution<int> u(-4, 4);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(u(rng), complex_entries ? u(rng) : 0);
  return m;
}

}  // namespace

TEST_CASE("Gaussian rational arithmetic") {
  const GaussianRational a(Rational(1, 2), Rational(3));
  const GaussianRational b(Rational(-2), Rational(1, 3));
  CHECK(a + b == GaussianRational(Rational(-3, 2), Rational(10, 3)));
  CHECK(a - b == GaussianRational(Rational(5, 2), Rational(8, 3)));
  CHECK(a * b == GaussianRational(Rational(-1) - Rational(1), Rational(1, 6) - Rational(6)));
  CHECK((a / b) * b == a);
  CHECK_THROWS(a / GaussianRational());
}

TEST_CASE("double conversion is exact") {
  ComplexMatrix m(2, 2);
  m << Complex(0.1, -0.3), 1e-300, 3.0, Complex(0, 2.5);
  CHECK(exact::to_double(exact::from_double(m)) == m);
  CHECK(exact::from_double(m)(0, 0).re == Rational(0.1));
  CHECK(exact::from_double(m)(0, 0).re != Rational(1, 10));
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix m = random_integer_matrix(rng, n, trial % 2 == 1);
      const Complex expected = oracle::leibniz_det(m);
      const auto det = exact::determinant(exact::from_double(m));
      CHECK(det.re.convert_to<double>() == expected.real());
      CHECK(det.im.convert_to<double>() == expected.imag());
      if (trial % 2 == 0) CHECK(exact::determinant(exact::real_part(exact::from_double(m))) == det.re);
    }
}

TEST_CASE("characteristic polynomial agrees with the Leibniz expansion") {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 6; ++trial) {
      const ComplexMatrix m = random_integer_matrix(rng, n, trial % 2 == 1);
      const auto expected = oracle::charpoly_leibniz(m);
      const auto got = exact::characteristic_polynomial(exact::from_double(m));
      REQUIRE(got.size() == expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].re.convert_to<double>() == expected[i].real());
        CHECK(got[i].im.convert_to<double>() == expected[i].imag());
      }
    }
}

TEST_CASE("rational characteristic polynomial of small fixed matrices") {
  exact::RationalMatrix swap(2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  CHECK(exact::characteristic_polynomial(swap) == std::vector<Rational>{1, 0, -1});
  const auto id = exact::RationalMatrix::identity(3);
  CHECK(exact::characteristic_polynomial(id) == std::vector<Rational>{1, -3, 3, -1});
  CHECK(exact::determinant(exact::RationalMatrix(3)) == 0);
}
