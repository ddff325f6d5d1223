#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epk/exact.hpp"
#include "epk/jordan.hpp"
#include "epk/partitioned.hpp"
#include "epk/perturbation.hpp"
#include "epk/spectral.hpp"

namespace epk {

/// Entries a..h of the 5x5 [2, 3] fundamental matrix.
struct Quintic23Params {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, g = 0, h = 0;

  /// e = g = 0, the subfamily with closed-form roots.
  bool restricted() const { return e == 0.0 && g == 0.0; }
  std::map<std::string, double> as_map() const;
};

ComplexMatrix realize_c23(const Quintic23Params& p);

/// 0 and ±sqrt((a+d+h ± sqrt(4b(c+f) + (d+h-a)^2)) / 2). Requires e = g = 0.
std::vector<Complex> quintic_roots_closed_form(const Quintic23Params& p);

/// [1, 0, -(a+d+h), 0, a(d+h) - b(f+c), 0]. Requires e = g = 0.
std::vector<double> secular_poly_23(const Quintic23Params& p);

struct Polynomial {
  std::vector<Complex> coeffs;  // degree-descending, monic
  bool exact = true;            // false once the dimension cap forced floating arithmetic
};

inline constexpr int kExactPolyMaxDim = 12;

/// Characteristic polynomial det(zI - M). Exact over the dyadic rationals the
/// double entries represent for dim <= 12; floating Faddeev-LeVerrier above.
Polynomial exact_poly(const ComplexMatrix& m);

struct BoundaryPoint {
  std::map<std::string, double> params;
  std::string branch;
  ComplexMatrix c;
  std::vector<int> ep_signature;  // Jordan block sizes at 0, from the rank sequence
  JordanDecomposition witness;
  double det_q = 0.0;
  bool similarity_holds = false;
};

/// h = -a - d, f = -a^2/b - c; Q_A built from (a, b, c, d, F = -a^2/b - c).
/// Throws SingularTransition when F b = 0.
BoundaryPoint solution_A(double a, double b, double c, double d, double tol = 1e-9);

/// -F^5 b^2.
double solution_A_det_formula(double a, double b, double c);

/// a = b = 0, h = -d, α = f + c. Branches:
///   "generic"  c != 0, α != 0: J = J4 ⊕ J1, det Q = α^3 / c
///   "c0"       c = 0, f != 0:  J = J4 ⊕ J1, det Q = f^2
///   "c0f0"     c = f = 0, d != 0: J = J3 ⊕ J2, det Q = d^3
///   "deep"     c = f = d = 0: same as solution_B_deep_limit()
/// c != 0 with α = 0 throws SingularTransition.
BoundaryPoint solution_B(double c, double d, double f, double tol = 1e-9);

/// C = J2 ⊕ J3 mapped onto J3 ⊕ J2 by a fixed integer Q with det 1.
BoundaryPoint solution_B_deep_limit();

/// Exact-arithmetic counterparts of the B branches on rational inputs.
struct ExactWitness {
  std::string branch;
  exact::RationalMatrix c;
  exact::RationalMatrix q;
  exact::RationalMatrix j;
  exact::Rational det_q;
  exact::Rational det_formula;  // α^3/c, f^2, d^3 or 1 depending on the branch
  bool similar = false;         // C Q == Q J exactly
};

ExactWitness solution_B_exact(const exact::Rational& c, const exact::Rational& d, const exact::Rational& f);
ExactWitness solution_B_deep_limit_exact();

/// One step of a degeneracy-breaking schedule: add `shift` to every listed entry.
struct SearchStage {
  std::string label;
  std::vector<Position> entries;
  double shift = 0.0;
};

struct StageResult {
  std::string label;
  std::map<Position, double> entries;
  SpectrumReport report;
  int zero_multiplicity = 0;
};

struct SearchLog {
  std::vector<StageResult> stages;  // stage 0 is the unmodified start
  int first_success = -1;           // first stage that is RealNonDegenerate
  bool succeeded() const { return first_success >= 0; }
};

/// Spectra come from the exact characteristic polynomial, so exact zero roots
/// keep their multiplicity instead of scattering into a complex ring.
SearchLog degeneracy_breaking_search(PartitionedFundamental start, const std::vector<SearchStage>& schedule,
                                     const ToleranceConfig& tol = {});

/// All 17 entries of the [2, 3, 4] ansatz at 1.
PartitionedFundamental lemma2_start();
/// b += -1/10, then a, l, u += -1/100.
std::vector<SearchStage> lemma2_schedule();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// One-dimensional slice through the template along `entry`.
struct ScanSlice {
  Position entry;
  Interval range;
  int steps = 64;
};

struct SampleRecord {
  std::map<Position, double> params;  // only the scanned entries
  Classification classification = Classification::Complex;
  double min_gap = 0.0;
  double max_imag = 0.0;
};

/// Bracket [lo, hi] of width <= 1e-8 across which D-membership flips.
struct BoundaryCrossing {
  Position entry;
  double lo = 0.0;
  double hi = 0.0;
  bool inside_at_lo = false;
};

struct ScanReport {
  std::vector<SampleRecord> samples;
  double fraction_physical = 0.0;  // share of RealNonDegenerate samples
  std::vector<BoundaryCrossing> crossings;
};

inline constexpr double kBisectionWidth = 1e-8;

/// Uniform sampling of the box around the template. Sample i draws from its own
/// generator seeded with (seed, i), so serial and parallel runs classify
/// identically.
ScanReport domain_scan(const PartitionedFundamental& tmpl, const std::map<Position, Interval>& box, int samples,
                       std::uint64_t seed, const std::vector<ScanSlice>& slices = {},
                       Execution exec = Execution::Parallel, const ToleranceConfig& tol = {});

}  // namespace epk
