#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epk/layout.hpp"
#include "epk/matrix.hpp"
#include "epk/spectral.hpp"

namespace epk {

/// Perturbation strength λ and its cut-off Λ = 1/sqrt(λ). Only one of the two is
/// stored; the other is derived.
class ScalingParams {
 public:
  static ScalingParams from_lambda(double lambda);
  static ScalingParams from_cutoff(double cutoff);

  double lambda() const { return 1.0 / (cutoff_ * cutoff_); }
  double cutoff() const { return cutoff_; }

  /// Λ < 10: the leading-order picture is not trustworthy yet.
  bool below_asymptotic_regime() const { return cutoff_ < 10.0; }

 private:
  explicit ScalingParams(double cutoff) : cutoff_(cutoff) {}
  double cutoff_;
};

/// G^(K)(Λ) = diag(Λ^0, ..., Λ^(K-1)).
ComplexMatrix scaling_matrix(int k, double cutoff);

/// M_mn = Λ^(m-n-1) W_mn.
ComplexMatrix rescale_perturbation(const ComplexMatrix& w, const ScalingParams& s);

/// Strictly lower triangle of a rescaled perturbation; everything on or above
/// the diagonal carries a negative power of Λ and drops out.
ComplexMatrix leading_order(const ComplexMatrix& m, double cutoff);

/// K x K fundamental matrix: unit superdiagonal (inherited from J^(K)(0), not a
/// coefficient) and free real coefficients a_m^(j) at (m + j, m).
class FundamentalMatrix {
 public:
  explicit FundamentalMatrix(int k);

  /// a_m^(j) = δ_j1.
  static FundamentalMatrix kronecker_delta(int k);

  int dim() const { return k_; }
  double coeff(int j, int m) const;
  void set_coeff(int j, int m, double value);

  /// All (j, m) pairs, j = 1..K-1, m = 0..K-1-j.
  std::vector<std::pair<int, int>> indices() const;

 private:
  void check(int j, int m) const;
  int k_;
  std::vector<std::vector<double>> coeffs_;  // [j-1][m]
};

ComplexMatrix realize_fundamental(const FundamentalMatrix& c);

/// W_rc(λ) = coefficient * Λ^power (plus lower order, which is not modelled).
struct Rule {
  double coefficient = 0.0;
  int power = 0;
};

struct PerturbationFamily {
  PartitionLayout layout{std::vector<int>{2}};
  std::map<Position, Rule> rules;
  std::optional<double> bound;  // declared max-norm bound on W(λ), if any

  int dim() const { return layout.total(); }
};

/// Rule (m + j, m) -> (a_m^(j), -(j - 1)); nothing on or above the diagonal.
PerturbationFamily admissible_family_from_fundamental(const FundamentalMatrix& c);

/// Same construction for any realized fundamental matrix over a layout: every
/// entry of C - J_layout(0) becomes a rule with the power that cancels its
/// block-local rescaling.
PerturbationFamily admissible_family(const ComplexMatrix& fundamental, const PartitionLayout& layout);

/// W(λ) evaluated at a given cut-off.
ComplexMatrix realize_family(const PerturbationFamily& family, double cutoff);

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<Position> violated;
  std::string reason;
};

/// Checks on every grid point: entries on/above the block-local diagonal vanish
/// (triangularity), each entry (m + j, m) scaled by Λ^(j-1) stays bounded along
/// the grid (size hierarchy), and the declared bound holds.
AdmissibilityReport check_admissibility(const PerturbationFamily& family, const std::vector<double>& cutoff_grid);

/// sqrt(λ) ε_n, ascending, for a fundamental matrix with real non-degenerate
/// spectrum. Throws NonRealFundamentalSpectrum otherwise.
std::vector<double> unfold_energies(const ComplexMatrix& fundamental, double lambda, const ToleranceConfig& tol = {});
std::vector<double> unfold_energies(const FundamentalMatrix& c, double lambda, const ToleranceConfig& tol = {});

enum class Execution { Serial, Parallel };

struct ConvergenceRow {
  double lambda = 0.0;
  double cutoff = 0.0;
  std::vector<Complex> scaled_energies;  // E_n(λ)/sqrt(λ), sorted
  double max_deviation = 0.0;            // max_n |E_n(λ)/sqrt(λ) - ε_n|
};

struct ConvergenceTable {
  std::vector<double> epsilons;  // ascending
  std::vector<ConvergenceRow> rows;
};

/// Full matrix J(0) + λ W(λ) per λ, eigensolved in extended precision.
/// W is the admissible family of `fundamental`; an optional bounded correction
/// R adds R_rc Λ^-(m-n) to W_rc, i.e. R/Λ to the rescaled matrix, standing in for
/// the unspecified higher-order terms. λ values must be positive and strictly
/// decreasing.
ConvergenceTable convergence_study(const ComplexMatrix& fundamental, const PartitionLayout& layout,
                                   const std::vector<double>& lambdas,
                                   const std::optional<ComplexMatrix>& correction = std::nullopt,
                                   Execution exec = Execution::Parallel, const ToleranceConfig& tol = {});

ConvergenceTable convergence_study(const FundamentalMatrix& c, const std::vector<double>& lambdas,
                                   const std::optional<ComplexMatrix>& correction = std::nullopt,
                                   Execution exec = Execution::Parallel, const ToleranceConfig& tol = {});

/// J(0) + λ W(λ) for the family of `fundamental` plus optional correction.
ComplexMatrix perturbed_hamiltonian(const ComplexMatrix& fundamental, const PartitionLayout& layout, double lambda,
                                    const std::optional<ComplexMatrix>& correction = std::nullopt);

/// Entries uniform in [-1, 1], deterministic in the seed.
ComplexMatrix random_correction(int dim, unsigned long long seed);

/// True when the values strictly decrease along the list.
bool strictly_decreasing(const std::vector<double>& values);

}  // namespace epk
