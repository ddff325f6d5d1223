#pragma once

#include <complex>
#include <compare>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace epk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// 50 significant digits; expression templates off so Eigen and std::complex
// see a plain value type.
using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;
using ExtendedComplex = std::complex<Extended>;
using ExtendedMatrix = Eigen::Matrix<ExtendedComplex, Eigen::Dynamic, Eigen::Dynamic>;

/// Row/column index pair; ordered row-major.
struct Position {
  int row = 0;
  int col = 0;
  auto operator<=>(const Position&) const = default;
};

/// "r,c" textual key used by the JSON formats.
std::string to_key(Position p);
Position parse_key(const std::string& key);

double max_abs(const ComplexMatrix& m);
bool is_real(const ComplexMatrix& m);

ComplexMatrix to_double(const ExtendedMatrix& m);
ExtendedMatrix to_extended(const ComplexMatrix& m);

/// FNV-1a over the raw entries; used to name matrices in diagnostics.
std::string matrix_hash(const ComplexMatrix& m);

}  // namespace epk
