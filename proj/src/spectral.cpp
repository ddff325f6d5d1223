#include "epk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "epk/errors.hpp"
#include "epk/exact.hpp"

namespace epk {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::RealNonDegenerate: return "real-nondegenerate";
    case Classification::RealDegenerate: return "real-degenerate";
    case Classification::Complex: return "complex";
  }
  return "complex";
}

Classification classification_from_string(const std::string& s) {
  if (s == "real-nondegenerate") return Classification::RealNonDegenerate;
  if (s == "real-degenerate") return Classification::RealDegenerate;
  if (s == "complex") return Classification::Complex;
  throw std::invalid_argument("unknown classification \"" + s + "\"");
}

void sort_spectrum(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw std::invalid_argument("eigenvalues need a square matrix");
  if (rows == 0) throw std::invalid_argument("eigenvalues need a non-empty matrix");
  if (rows > 10000) throw std::invalid_argument("eigenvalues: dimension above 10^4 is not supported");
}

}  // namespace

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  require_square(m.rows(), m.cols());
  if (!m.allFinite()) throw std::invalid_argument("eigenvalues: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw EigensolverFailure("QR iteration did not converge", matrix_hash(m));
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  sort_spectrum(out);
  return out;
}

std::vector<Complex> eigenvalues(const ExtendedMatrix& m) {
  require_square(m.rows(), m.cols());
  Eigen::ComplexEigenSolver<ExtendedMatrix> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("extended-precision QR iteration did not converge", matrix_hash(to_double(m)));
  std::vector<Complex> out;
  out.reserve(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const ExtendedComplex& z = solver.eigenvalues()(i);
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  sort_spectrum(out);
  return out;
}

std::vector<Complex> eigenvalues_via_exact_polynomial(const ComplexMatrix& m, int* zero_multiplicity) {
  require_square(m.rows(), m.cols());
  if (!is_real(m)) throw std::invalid_argument("eigenvalues_via_exact_polynomial needs a real matrix");
  const auto poly = exact::characteristic_polynomial(exact::real_part(exact::from_double(m)));
  int degree = static_cast<int>(poly.size()) - 1;
  int zeros = 0;
  while (zeros < degree && poly[degree - zeros] == 0) ++zeros;
  if (zero_multiplicity) *zero_multiplicity = zeros;

  std::vector<Complex> out(zeros, Complex(0.0, 0.0));
  const int n = degree - zeros;
  if (n > 0) {
    auto to_ext = [](const exact::Rational& q) {
      return Extended(boost::multiprecision::numerator(q)) / Extended(boost::multiprecision::denominator(q));
    };
    // Companion matrix of z^n + p1 z^(n-1) + ... + pn.
    ExtendedMatrix companion = ExtendedMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = ExtendedComplex(Extended(1));
    for (int i = 0; i < n; ++i) companion(i, n - 1) = ExtendedComplex(-to_ext(poly[n - i]));
    const auto roots = eigenvalues(companion);
    out.insert(out.end(), roots.begin(), roots.end());
  }
  sort_spectrum(out);
  return out;
}

SpectrumReport classify_spectrum(std::vector<Complex> eigs, const ToleranceConfig& tol) {
  if (eigs.empty()) throw std::invalid_argument("classify_spectrum needs a non-empty eigenvalue list");
  sort_spectrum(eigs);
  SpectrumReport r;
  r.tolerances = tol;
  for (const auto& z : eigs) {
    r.spectral_radius = std::max(r.spectral_radius, std::abs(z));
    r.max_imag = std::max(r.max_imag, std::abs(z.imag()));
  }
  r.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eigs.size(); ++i)
    for (std::size_t j = i + 1; j < eigs.size(); ++j) r.min_gap = std::min(r.min_gap, std::abs(eigs[i] - eigs[j]));

  if (r.max_imag > tol.reality_abs + tol.reality_rel * r.spectral_radius)
    r.classification = Classification::Complex;
  else if (r.min_gap <= tol.gap_rel * std::max(r.spectral_radius, 1.0))
    r.classification = Classification::RealDegenerate;
  else
    r.classification = Classification::RealNonDegenerate;
  r.eigenvalues = std::move(eigs);
  return r;
}

bool in_physical_domain(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return classify_spectrum(eigenvalues(m), tol).classification == Classification::RealNonDegenerate;
}

namespace {

// Sorts [first, last) by key, then each run whose consecutive keys lie within
// tol by `then`.
template <class It, class Key, class Then>
void sort_in_runs(It first, It last, double tol, Key key, Then then) {
  std::sort(first, last, [&](const Complex& a, const Complex& b) { return key(a) < key(b); });
  It start = first;
  for (It i = first; i != last; ++i) {
    const It next = std::next(i);
    if (next == last || key(*next) - key(*i) > tol) {
      then(start, next);
      start = next;
    }
  }
}

}  // namespace

std::vector<Complex> modulus_order(std::vector<Complex> values, double tol) {
  auto by_imag = [](auto first, auto last) {
    std::sort(first, last, [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
  };
  auto by_real = [&](auto first, auto last) {
    sort_in_runs(first, last, tol, [](const Complex& z) { return z.real(); }, by_imag);
  };
  sort_in_runs(values.begin(), values.end(), tol, [](const Complex& z) { return std::abs(z); }, by_real);
  return values;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("multiset_distance: lists differ in length");
  const auto x = modulus_order(a, tol);
  const auto y = modulus_order(b, tol);
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace epk
