#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "epk/errors.hpp"
#include "epk/jordan.hpp"
#include "epk/perturbation.hpp"
#include "oracles.hpp"

using namespace epk;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(u(rng), u(rng));
  return m;
}

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST_CASE("scaling parameters") {
  const auto s = ScalingParams::from_lambda(1e-4);
  CHECK(s.cutoff() == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(s.lambda() == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK_FALSE(s.below_asymptotic_regime());
  CHECK(ScalingParams::from_cutoff(4.0).below_asymptotic_regime());
  CHECK(ScalingParams::from_cutoff(4.0).lambda() == 1.0 / 16.0);
  CHECK_THROWS_AS(ScalingParams::from_lambda(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalingParams::from_lambda(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalingParams::from_cutoff(0.0), std::invalid_argument);
}

TEST_CASE("scaling matrix") {
  CHECK(scaling_matrix(3, 2.0) == diag({1, 2, 4}));
  CHECK(scaling_matrix(6, 1.0) == ComplexMatrix::Identity(6, 6));
  CHECK(scaling_matrix(2, 10.0) == diag({1, 10}));
  CHECK_THROWS_AS(scaling_matrix(0, 2.0), std::invalid_argument);
}

TEST_CASE("rescaled perturbation") {
  const ComplexMatrix m = rescale_perturbation(ComplexMatrix::Ones(2, 2), ScalingParams::from_cutoff(10));
  CHECK(m(0, 0).real() == doctest::Approx(0.1));
  CHECK(m(0, 1).real() == doctest::Approx(0.01));
  CHECK(m(1, 0).real() == doctest::Approx(1.0));
  CHECK(m(1, 1).real() == doctest::Approx(0.1));
  CHECK(rescale_perturbation(ComplexMatrix::Zero(3, 3), ScalingParams::from_cutoff(7)).isZero(0));
  std::mt19937_64 rng(1);
  const auto w = random_matrix(rng, 4);
  CHECK(rescale_perturbation(w, ScalingParams::from_cutoff(1.0)) == w);

  const auto k = rescale_perturbation(ComplexMatrix::Ones(5, 5), ScalingParams::from_cutoff(3));
  CHECK(k(4, 0).real() == doctest::Approx(std::pow(3.0, 3)));
  CHECK(k(0, 4).real() == doctest::Approx(std::pow(3.0, -5)));
}

TEST_CASE("leading-order matrix") {
  const double cutoff = 10;
  const auto m0 = leading_order(rescale_perturbation(ComplexMatrix::Ones(3, 3), ScalingParams::from_cutoff(cutoff)), cutoff);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(1, 0) = 1;
  expected(2, 0) = 10;
  expected(2, 1) = 1;
  CHECK(oracle::max_abs_diff(m0, expected) < 1e-14);

  ComplexMatrix w2(2, 2);
  w2 << 5, 6, 7, 8;
  const auto l2 = leading_order(rescale_perturbation(w2, ScalingParams::from_cutoff(3)), 3);
  CHECK(l2(1, 0) == Complex(7, 0));
  CHECK(l2(0, 0) == Complex(0, 0));
  CHECK(l2(0, 1) == Complex(0, 0));
  CHECK(leading_order(rescale_perturbation(diag({1, 2, 3}), ScalingParams::from_cutoff(5)), 5).isZero(0));
}

TEST_CASE("fundamental matrices") {
  FundamentalMatrix c2(2);
  c2.set_coeff(1, 0, 0.7);
  ComplexMatrix e2(2, 2);
  e2 << 0, 1, 0.7, 0;
  CHECK(realize_fundamental(c2) == e2);

  FundamentalMatrix c3(3);
  c3.set_coeff(1, 0, 2);  // p
  c3.set_coeff(1, 1, 3);  // q
  c3.set_coeff(2, 0, 5);  // r
  ComplexMatrix e3(3, 3);
  e3 << 0, 1, 0, 2, 0, 1, 5, 3, 0;
  CHECK(realize_fundamental(c3) == e3);

  const auto kd = realize_fundamental(FundamentalMatrix::kronecker_delta(5));
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) CHECK(kd(r, c) == Complex(std::abs(r - c) == 1 ? 1.0 : 0.0, 0));

  CHECK(c3.indices().size() == 3);
  CHECK_THROWS_AS(c3.coeff(3, 0), std::out_of_range);
  CHECK_THROWS_AS(c3.set_coeff(2, 1, 1.0), std::out_of_range);
  CHECK_THROWS_AS(c3.set_coeff(1, 0, NAN), std::invalid_argument);
  CHECK_THROWS_AS(FundamentalMatrix(1), std::invalid_argument);
}

TEST_CASE("admissible family from a fundamental matrix") {
  FundamentalMatrix c(3);
  c.set_coeff(1, 0, 2);
  c.set_coeff(1, 1, 3);
  c.set_coeff(2, 0, 5);
  const auto f = admissible_family_from_fundamental(c);
  REQUIRE(f.rules.size() == 3);
  CHECK(f.rules.at({1, 0}).coefficient == 2);
  CHECK(f.rules.at({1, 0}).power == 0);
  CHECK(f.rules.at({2, 1}).power == 0);
  CHECK(f.rules.at({2, 0}).coefficient == 5);
  CHECK(f.rules.at({2, 0}).power == -1);
  const auto w = realize_family(f, 10);
  CHECK(w(2, 0).real() == doctest::Approx(0.5));

  CHECK(realize_family(admissible_family_from_fundamental(FundamentalMatrix(4)), 10).isZero(0));

  const auto kd = admissible_family_from_fundamental(FundamentalMatrix::kronecker_delta(5));
  CHECK(kd.rules.size() == 4);
  for (const auto& [p, r] : kd.rules) {
    CHECK(p.row == p.col + 1);
    CHECK(r.power == 0);
  }

  // The layout-based construction agrees on single blocks.
  const auto g = admissible_family(realize_fundamental(c), PartitionLayout::single(3));
  CHECK(realize_family(g, 7.0) == realize_family(f, 7.0));
  ComplexMatrix upper = realize_fundamental(c);
  upper(0, 2) = 1.0;
  CHECK_THROWS_AS(admissible_family(upper, PartitionLayout::single(3)), std::invalid_argument);
}

TEST_CASE("admissibility checks") {
  const std::vector<double> grid = {1, 10, 100, 1000};
  FundamentalMatrix c(3);
  c.set_coeff(1, 0, 1);
  c.set_coeff(1, 1, 1);
  c.set_coeff(2, 0, 1);
  CHECK(check_admissibility(admissible_family_from_fundamental(c), grid).admissible);

  auto injected = admissible_family_from_fundamental(c);
  injected.rules[{2, 0}] = Rule{1.0, 0};  // O(Λ^0) instead of O(Λ^-1)
  const auto bad = check_admissibility(injected, grid);
  CHECK_FALSE(bad.admissible);
  REQUIRE(bad.violated.has_value());
  CHECK(*bad.violated == Position{2, 0});
  CHECK(bad.reason.find("size hierarchy") != std::string::npos);

  auto upper = admissible_family_from_fundamental(c);
  upper.rules[{0, 1}] = Rule{0.3, -2};
  const auto tri = check_admissibility(upper, grid);
  CHECK_FALSE(tri.admissible);
  CHECK(*tri.violated == Position{0, 1});
  CHECK(tri.reason.find("triangularity") != std::string::npos);

  auto bounded = admissible_family_from_fundamental(c);
  bounded.bound = 0.5;
  CHECK_FALSE(check_admissibility(bounded, grid).admissible);
  bounded.bound = 1.0;
  CHECK(check_admissibility(bounded, grid).admissible);

  CHECK_THROWS_AS(check_admissibility(bounded, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_admissibility(bounded, {0.5, 10}), std::invalid_argument);
}

TEST_CASE("conjugation identity of the Λ-rescaling") {
  std::mt19937_64 rng(8);
  for (int k = 2; k <= 6; ++k)
    for (double cutoff : {2.0, 10.0, 37.0}) {
      const ComplexMatrix w = random_matrix(rng, k);
      const Complex e(0.3, -0.1);
      const double lambda = 1.0 / (cutoff * cutoff);
      const ComplexMatrix j = jordan_matrix({{k, 0.0}});
      const ComplexMatrix g = scaling_matrix(k, cutoff);
      const ComplexMatrix lhs =
          cutoff * (g * (j + lambda * w - e * ComplexMatrix::Identity(k, k)) * g.inverse());
      const ComplexMatrix rhs =
          j + rescale_perturbation(w, ScalingParams::from_cutoff(cutoff)) - cutoff * e * ComplexMatrix::Identity(k, k);
      CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("spectral equivalence of J + λW and (J + M)/Λ") {
  std::mt19937_64 rng(9);
  for (int k = 2; k <= 6; ++k)
    for (double cutoff : {3.0, 10.0}) {
      const ComplexMatrix w = random_matrix(rng, k);
      const double lambda = 1.0 / (cutoff * cutoff);
      const ComplexMatrix j = jordan_matrix({{k, 0.0}});
      auto a = eigenvalues(to_extended(ComplexMatrix(j + lambda * w)));
      auto b = eigenvalues(to_extended(ComplexMatrix(j + rescale_perturbation(w, ScalingParams::from_cutoff(cutoff)))));
      for (auto& z : b) z /= cutoff;
      double scale = 0;
      for (const auto& z : a) scale = std::max(scale, std::abs(z));
      CHECK(multiset_distance(a, b) <= 1e-10 * scale);
    }
}

TEST_CASE("Kronecker-delta fundamental spectra are real, simple and Chebyshev") {
  for (int k = 2; k <= 12; ++k) {
    const auto r = classify_spectrum(eigenvalues(realize_fundamental(FundamentalMatrix::kronecker_delta(k))));
    CHECK(r.classification == Classification::RealNonDegenerate);
    const auto expected = oracle::chebyshev_roots(k);
    for (int n = 0; n < k; ++n) CHECK(std::abs(r.eigenvalues[n] - expected[n]) < 1e-12);
  }
}

TEST_CASE("leading-order secular polynomial is Λ-independent for admissible families") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 2; k <= 5; ++k) {
    FundamentalMatrix c(k);
    for (auto [j, m] : c.indices()) c.set_coeff(j, m, u(rng));
    const auto family = admissible_family_from_fundamental(c);
    const ComplexMatrix j0 = jordan_matrix({{k, 0.0}});
    std::vector<std::vector<Complex>> polys;
    for (double cutoff : {10.0, 1e3, 1e5}) {
      const auto m = rescale_perturbation(realize_family(family, cutoff), ScalingParams::from_cutoff(cutoff));
      polys.push_back(oracle::charpoly_leibniz(j0 + leading_order(m, cutoff)));
    }
    for (std::size_t i = 0; i < polys[0].size(); ++i) {
      CHECK(std::abs(polys[1][i] - polys[0][i]) < 1e-12);
      CHECK(std::abs(polys[2][i] - polys[0][i]) < 1e-12);
    }
  }
}

TEST_CASE("unfolded energies") {
  const auto e = unfold_energies(FundamentalMatrix::kronecker_delta(2), 0.01);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(0.1).epsilon(1e-14));

  FundamentalMatrix rot(2);
  rot.set_coeff(1, 0, -1);
  CHECK_THROWS_AS(unfold_energies(rot, 0.1), NonRealFundamentalSpectrum);
  CHECK_THROWS_AS(unfold_energies(FundamentalMatrix::kronecker_delta(3), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(unfold_energies(FundamentalMatrix(3), 0.1), NonRealFundamentalSpectrum);

  // Ratios do not depend on λ.
  const auto c = FundamentalMatrix::kronecker_delta(6);
  const auto a = unfold_energies(c, 1e-2);
  const auto b = unfold_energies(c, 3e-7);
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t m = 0; m < a.size(); ++m)
      if (std::abs(a[m]) > 1e-9) CHECK(a[n] / a[m] == doctest::Approx(b[n] / b[m]).epsilon(1e-12));
}

TEST_CASE("convergence study") {
  const std::vector<double> lambdas = {1e-2, 1e-4, 1e-6};
  const auto kd3 = FundamentalMatrix::kronecker_delta(3);

  const auto exact_rules = convergence_study(kd3, lambdas);
  for (const auto& row : exact_rules.rows) CHECK(row.max_deviation < 1e-12);

  const auto corrected = convergence_study(kd3, lambdas, random_correction(3, 42));
  std::vector<double> dev;
  for (const auto& row : corrected.rows) dev.push_back(row.max_deviation);
  CHECK(strictly_decreasing(dev));
  CHECK(dev.back() < 1e-2);
  CHECK(corrected.rows[1].cutoff == doctest::Approx(100.0));

  const auto serial = convergence_study(kd3, lambdas, random_correction(3, 42), Execution::Serial);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(serial.rows[i].max_deviation == corrected.rows[i].max_deviation);
    CHECK(serial.rows[i].scaled_energies == corrected.rows[i].scaled_energies);
  }

  CHECK_THROWS_AS(convergence_study(kd3, {1e-4, 1e-2}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(kd3, {1e-2, 1e-2}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(kd3, {1e-2, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(kd3, {}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(FundamentalMatrix(3), lambdas), NonRealFundamentalSpectrum);
}

TEST_CASE("zero family leaves the Jordan block untouched") {
  const ComplexMatrix zero = jordan_matrix({{4, 0.0}});
  const auto h = perturbed_hamiltonian(zero, PartitionLayout::single(4), 1e-3);
  CHECK(h == jordan_matrix({{4, 0.0}}));
}

TEST_CASE("random correction is deterministic and bounded") {
  const auto a = random_correction(4, 99);
  CHECK(a == random_correction(4, 99));
  CHECK(a != random_correction(4, 100));
  CHECK(a.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(is_real(a));
}
