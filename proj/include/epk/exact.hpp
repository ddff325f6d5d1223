#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epk/matrix.hpp"

namespace epk::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex rational a + b i.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussianRational&) const = default;
};

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

/// Dense square matrix over a field type (Rational or GaussianRational).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, T{Rational{0}}) {}

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = T{Rational{1}};
    return m;
  }

  int dim() const { return dim_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * dim_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  int dim_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using GaussianMatrix = Matrix<GaussianRational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  const int n = a.dim();
  Matrix<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a(i, k) == T{Rational{0}}) continue;
      for (int j = 0; j < n; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
    }
  return out;
}

/// Every double is a dyadic rational; the conversion is exact.
GaussianMatrix from_double(const ComplexMatrix& m);
RationalMatrix real_part(const GaussianMatrix& m);
ComplexMatrix to_double(const GaussianMatrix& m);
ComplexMatrix to_double(const RationalMatrix& m);

/// det(z I - A), coefficients in degree-descending order (leading 1), computed
/// by the Faddeev-LeVerrier trace recursion.
std::vector<GaussianRational> characteristic_polynomial(const GaussianMatrix& a);
std::vector<Rational> characteristic_polynomial(const RationalMatrix& a);

/// Gaussian elimination over the field.
Rational determinant(RationalMatrix a);
GaussianRational determinant(GaussianMatrix a);

}  // namespace epk::exact
