#include "epk/matrix.hpp"

#include <cstdint>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace epk {

std::string to_key(Position p) { return std::to_string(p.row) + "," + std::to_string(p.col); }

Position parse_key(const std::string& key) {
  const auto comma = key.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("entry key must be \"row,col\", got \"" + key + "\"");
  std::size_t used_r = 0, used_c = 0;
  Position p;
  try {
    p.row = std::stoi(key.substr(0, comma), &used_r);
    p.col = std::stoi(key.substr(comma + 1), &used_c);
  } catch (const std::exception&) {
    throw std::invalid_argument("entry key must be \"row,col\", got \"" + key + "\"");
  }
  if (used_r != comma || used_c != key.size() - comma - 1 || p.row < 0 || p.col < 0)
    throw std::invalid_argument("entry key must be \"row,col\" with non-negative integers, got \"" + key + "\"");
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_real(const ComplexMatrix& m) { return m.size() == 0 || m.imag().cwiseAbs().maxCoeff() == 0.0; }

ComplexMatrix to_double(const ExtendedMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = Complex(static_cast<double>(m(r, c).real()), static_cast<double>(m(r, c).imag()));
  return out;
}

ExtendedMatrix to_extended(const ComplexMatrix& m) {
  ExtendedMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = ExtendedComplex(Extended(m(r, c).real()), Extended(m(r, c).imag()));
  return out;
}

std::string matrix_hash(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  mix(dims, sizeof dims);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double parts[2] = {m(r, c).real(), m(r, c).imag()};
      for (double& x : parts)
        if (x == 0.0) x = 0.0;  // fold -0 into +0
      mix(parts, sizeof parts);
    }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace epk
