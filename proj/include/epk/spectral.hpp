#pragma once

#include <string>
#include <vector>

#include "epk/matrix.hpp"

namespace epk {

struct ToleranceConfig {
  double reality_abs = 1e-10;
  double reality_rel = 1e-10;
  double gap_rel = 1e-8;

  bool operator==(const ToleranceConfig&) const = default;
};

enum class Classification { RealNonDegenerate, RealDegenerate, Complex };

std::string to_string(Classification c);
Classification classification_from_string(const std::string& s);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // sorted by (Re, Im)
  Classification classification = Classification::Complex;
  double min_gap = 0.0;  // +inf for a single eigenvalue
  double max_imag = 0.0;
  double spectral_radius = 0.0;
  ToleranceConfig tolerances;

  bool operator==(const SpectrumReport&) const = default;
};

/// Lexicographic (Re, Im) order used for every eigenvalue list.
void sort_spectrum(std::vector<Complex>& values);

/// Dense nonsymmetric eigensolve in double precision.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Same eigensolve carried out in 50-digit arithmetic, rounded at the end.
/// Needed near exceptional points where double precision loses the
/// eigenvalues to the conditioning of the input itself.
std::vector<Complex> eigenvalues(const ExtendedMatrix& m);

/// Eigenvalues via the exact characteristic polynomial of the (double) entries:
/// the exact multiplicity of the root 0 is split off, the remaining roots come
/// from an extended-precision companion eigensolve. Real matrices only.
std::vector<Complex> eigenvalues_via_exact_polynomial(const ComplexMatrix& m, int* zero_multiplicity = nullptr);

SpectrumReport classify_spectrum(std::vector<Complex> eigs, const ToleranceConfig& tol = {});

bool in_physical_domain(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Sort for pairing two root multisets: by modulus, ties (within tol) by real
/// part, then imaginary part.
std::vector<Complex> modulus_order(std::vector<Complex> values, double tol = 1e-7);

/// max_i |a_i - b_i| after modulus_order of both lists.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol = 1e-7);

}  // namespace epk
