#include "epk/exact.hpp"

#include <stdexcept>
#include <utility>

namespace epk::exact {

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) { return {a.re + b.re, a.im + b.im}; }

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational norm = b.re * b.re + b.im * b.im;
  if (norm == 0) throw std::domain_error("division by zero");
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

GaussianMatrix from_double(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("exact matrices are square");
  if (!m.allFinite()) throw std::invalid_argument("exact conversion needs finite entries");
  GaussianMatrix out(static_cast<int>(m.rows()));
  for (int r = 0; r < out.dim(); ++r)
    for (int c = 0; c < out.dim(); ++c) out(r, c) = GaussianRational(Rational(m(r, c).real()), Rational(m(r, c).imag()));
  return out;
}

RationalMatrix real_part(const GaussianMatrix& m) {
  RationalMatrix out(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = m(r, c).re;
  return out;
}

ComplexMatrix to_double(const GaussianMatrix& m) {
  ComplexMatrix out(m.dim(), m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      out(r, c) = Complex(m(r, c).re.convert_to<double>(), m(r, c).im.convert_to<double>());
  return out;
}

ComplexMatrix to_double(const RationalMatrix& m) {
  ComplexMatrix out(m.dim(), m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = Complex(m(r, c).convert_to<double>(), 0.0);
  return out;
}

namespace {

template <class T>
std::vector<T> faddeev_leverrier(const Matrix<T>& a) {
  const int n = a.dim();
  std::vector<T> coeffs(n + 1, T{Rational{0}});
  coeffs[0] = T{Rational{1}};
  Matrix<T> m(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    Matrix<T> next = a * m;
    for (int i = 0; i < n; ++i) next(i, i) = next(i, i) + coeffs[k - 1];
    m = std::move(next);
    const Matrix<T> am = a * m;
    T trace{Rational{0}};
    for (int i = 0; i < n; ++i) trace = trace + am(i, i);
    coeffs[k] = T{Rational{0}} - trace / T{Rational{k}};
  }
  return coeffs;
}

template <class T>
T eliminate(Matrix<T> a) {
  const int n = a.dim();
  const T zero{Rational{0}};
  T det{Rational{1}};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a(pivot, col) == zero) ++pivot;
    if (pivot == n) return zero;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = zero - det;
    }
    det = det * a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == zero) continue;
      const T factor = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) = a(r, c) - factor * a(col, c);
    }
  }
  return det;
}

}  // namespace

std::vector<GaussianRational> characteristic_polynomial(const GaussianMatrix& a) { return faddeev_leverrier(a); }
std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) { return faddeev_leverrier(a); }

Rational determinant(RationalMatrix a) { return eliminate(std::move(a)); }
GaussianRational determinant(GaussianMatrix a) { return eliminate(std::move(a)); }

}  // namespace epk::exact
