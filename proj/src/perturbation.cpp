#include "epk/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <string>

#include "epk/errors.hpp"

namespace epk {

ScalingParams ScalingParams::from_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("λ must be positive and finite");
  return ScalingParams(1.0 / std::sqrt(lambda));
}

ScalingParams ScalingParams::from_cutoff(double cutoff) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("Λ must be positive and finite");
  return ScalingParams(cutoff);
}

ComplexMatrix scaling_matrix(int k, double cutoff) {
  if (k < 1) throw std::invalid_argument("K must be >= 1");
  if (!(cutoff > 0.0)) throw std::invalid_argument("Λ must be positive");
  ComplexMatrix g = ComplexMatrix::Zero(k, k);
  for (int i = 0; i < k; ++i) g(i, i) = std::pow(cutoff, i);
  return g;
}

ComplexMatrix rescale_perturbation(const ComplexMatrix& w, const ScalingParams& s) {
  if (w.rows() != w.cols()) throw std::invalid_argument("perturbation must be square");
  ComplexMatrix m(w.rows(), w.cols());
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c) m(r, c) = w(r, c) * std::pow(s.cutoff(), static_cast<double>(r - c - 1));
  return m;
}

ComplexMatrix leading_order(const ComplexMatrix& m, double cutoff) {
  if (m.rows() != m.cols()) throw std::invalid_argument("rescaled perturbation must be square");
  if (!(cutoff > 0.0)) throw std::invalid_argument("Λ must be positive");
  return m.triangularView<Eigen::StrictlyLower>();
}

FundamentalMatrix::FundamentalMatrix(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("fundamental matrix needs K >= 2, got " + std::to_string(k));
  for (int j = 1; j < k; ++j) coeffs_.emplace_back(k - j, 0.0);
}

FundamentalMatrix FundamentalMatrix::kronecker_delta(int k) {
  FundamentalMatrix c(k);
  for (int m = 0; m + 1 < k; ++m) c.set_coeff(1, m, 1.0);
  return c;
}

void FundamentalMatrix::check(int j, int m) const {
  if (j < 1 || j >= k_ || m < 0 || m > k_ - 1 - j)
    throw std::out_of_range("coefficient a_" + std::to_string(m) + "^(" + std::to_string(j) + ") outside K=" +
                            std::to_string(k_));
}

double FundamentalMatrix::coeff(int j, int m) const {
  check(j, m);
  return coeffs_[j - 1][m];
}

void FundamentalMatrix::set_coeff(int j, int m, double value) {
  check(j, m);
  if (!std::isfinite(value)) throw std::invalid_argument("fundamental coefficients must be finite");
  coeffs_[j - 1][m] = value;
}

std::vector<std::pair<int, int>> FundamentalMatrix::indices() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < k_; ++j)
    for (int m = 0; m <= k_ - 1 - j; ++m) out.emplace_back(j, m);
  return out;
}

ComplexMatrix realize_fundamental(const FundamentalMatrix& c) {
  const int k = c.dim();
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) out(i, i + 1) = 1.0;
  for (auto [j, m] : c.indices()) out(m + j, m) = c.coeff(j, m);
  return out;
}

PerturbationFamily admissible_family_from_fundamental(const FundamentalMatrix& c) {
  PerturbationFamily family{PartitionLayout::single(c.dim()), {}, std::nullopt};
  for (auto [j, m] : c.indices())
    if (c.coeff(j, m) != 0.0) family.rules[{m + j, m}] = Rule{c.coeff(j, m), -(j - 1)};
  return family;
}

PerturbationFamily admissible_family(const ComplexMatrix& fundamental, const PartitionLayout& layout) {
  const int n = layout.total();
  if (fundamental.rows() != n || fundamental.cols() != n)
    throw std::invalid_argument("fundamental matrix dimension does not match layout");
  if (!is_real(fundamental)) throw std::invalid_argument("fundamental matrix must be real");
  const ComplexMatrix v = fundamental - partitioned_jordan(layout, 0.0);
  PerturbationFamily family{layout, {}, std::nullopt};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double x = v(r, c).real();
      if (x == 0.0) continue;
      const int p = layout.rescale_power(r, c);
      if (p < 0)
        throw std::invalid_argument("fundamental entry " + to_key({r, c}) +
                                    " lies on or above the block-local diagonal");
      family.rules[{r, c}] = Rule{x, -p};
    }
  return family;
}

ComplexMatrix realize_family(const PerturbationFamily& family, double cutoff) {
  const int n = family.dim();
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (const auto& [pos, rule] : family.rules) {
    if (pos.row >= n || pos.col >= n) throw std::invalid_argument("rule " + to_key(pos) + " outside the matrix");
    w(pos.row, pos.col) = rule.coefficient * std::pow(cutoff, rule.power);
  }
  return w;
}

AdmissibilityReport check_admissibility(const PerturbationFamily& family, const std::vector<double>& cutoff_grid) {
  if (cutoff_grid.empty()) throw std::invalid_argument("admissibility grid must be non-empty");
  for (double x : cutoff_grid)
    if (!(x >= 1.0) || !std::isfinite(x)) throw std::invalid_argument("admissibility grid values must be >= 1");

  const auto& layout = family.layout;
  for (const auto& [pos, rule] : family.rules) {
    if (rule.coefficient == 0.0) continue;
    const int p = layout.rescale_power(pos.row, pos.col);
    if (p < 0) return {false, pos, "triangularity: entry " + to_key(pos) + " on or above the block-local diagonal"};
    // |W| Λ^(j-1) must stay within its Λ = 1 value.
    const double scale = std::abs(rule.coefficient) * (1.0 + 1e-9);
    for (double cutoff : cutoff_grid) {
      const double scaled = std::abs(rule.coefficient * std::pow(cutoff, rule.power)) * std::pow(cutoff, p);
      if (scaled > scale)
        return {false, pos,
                "size hierarchy: entry " + to_key(pos) + " must be O(Λ^" + std::to_string(-p) + "), grows as Λ^" +
                    std::to_string(rule.power)};
    }
  }
  if (family.bound) {
    for (double cutoff : cutoff_grid) {
      const ComplexMatrix w = realize_family(family, cutoff);
      Eigen::Index r = 0, c = 0;
      const double m = w.cwiseAbs().maxCoeff(&r, &c);
      if (m > *family.bound)
        return {false, Position{static_cast<int>(r), static_cast<int>(c)},
                "bound: |W| = " + std::to_string(m) + " exceeds declared " + std::to_string(*family.bound)};
    }
  }
  return {};
}

namespace {

std::vector<double> fundamental_spectrum(const ComplexMatrix& fundamental, const ToleranceConfig& tol) {
  const auto report = classify_spectrum(eigenvalues(to_extended(fundamental)), tol);
  if (report.classification != Classification::RealNonDegenerate)
    throw NonRealFundamentalSpectrum("fundamental matrix spectrum is " + to_string(report.classification) +
                                     " (max |Im| " + std::to_string(report.max_imag) + ", min gap " +
                                     std::to_string(report.min_gap) + "); a real non-degenerate spectrum is required");
  std::vector<double> eps;
  for (const auto& z : report.eigenvalues) eps.push_back(z.real());
  std::sort(eps.begin(), eps.end());
  return eps;
}

}  // namespace

std::vector<double> unfold_energies(const ComplexMatrix& fundamental, double lambda, const ToleranceConfig& tol) {
  ScalingParams::from_lambda(lambda);  // validates λ > 0
  const double root = std::sqrt(lambda);
  auto eps = fundamental_spectrum(fundamental, tol);
  for (double& e : eps) e *= root;
  return eps;
}

std::vector<double> unfold_energies(const FundamentalMatrix& c, double lambda, const ToleranceConfig& tol) {
  return unfold_energies(realize_fundamental(c), lambda, tol);
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

ComplexMatrix perturbed_hamiltonian(const ComplexMatrix& fundamental, const PartitionLayout& layout, double lambda,
                                    const std::optional<ComplexMatrix>& correction) {
  const auto s = ScalingParams::from_lambda(lambda);
  const int n = layout.total();
  ComplexMatrix w = realize_family(admissible_family(fundamental, layout), s.cutoff());
  if (correction) {
    if (correction->rows() != n || correction->cols() != n)
      throw std::invalid_argument("correction dimension does not match layout");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        w(r, c) += (*correction)(r, c) * std::pow(s.cutoff(), -(layout.rescale_power(r, c) + 1));
  }
  return partitioned_jordan(layout, 0.0) + lambda * w;
}

ConvergenceTable convergence_study(const ComplexMatrix& fundamental, const PartitionLayout& layout,
                                   const std::vector<double>& lambdas, const std::optional<ComplexMatrix>& correction,
                                   Execution exec, const ToleranceConfig& tol) {
  if (lambdas.empty()) throw std::invalid_argument("convergence_study needs at least one λ");
  for (double l : lambdas)
    if (!(l > 0.0)) throw std::invalid_argument("convergence_study: λ values must be positive");
  if (!strictly_decreasing(lambdas)) throw std::invalid_argument("convergence_study: λ values must strictly decrease");

  ConvergenceTable table;
  table.epsilons = fundamental_spectrum(fundamental, tol);
  table.rows.resize(lambdas.size());

  auto evaluate = [&](std::size_t i) {
    const double lambda = lambdas[i];
    const ComplexMatrix h = perturbed_hamiltonian(fundamental, layout, lambda, correction);
    ConvergenceRow row;
    row.lambda = lambda;
    row.cutoff = 1.0 / std::sqrt(lambda);
    row.scaled_energies = eigenvalues(to_extended(h));
    for (auto& e : row.scaled_energies) e /= std::sqrt(lambda);
    sort_spectrum(row.scaled_energies);
    for (std::size_t n = 0; n < row.scaled_energies.size(); ++n)
      row.max_deviation = std::max(row.max_deviation, std::abs(row.scaled_energies[n] - table.epsilons[n]));
    table.rows[i] = std::move(row);
  };

  const auto count = static_cast<long>(lambdas.size());
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        evaluate(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (long i = 0; i < count; ++i) evaluate(static_cast<std::size_t>(i));
  }
  return table;
}

ConvergenceTable convergence_study(const FundamentalMatrix& c, const std::vector<double>& lambdas,
                                   const std::optional<ComplexMatrix>& correction, Execution exec,
                                   const ToleranceConfig& tol) {
  return convergence_study(realize_fundamental(c), PartitionLayout::single(c.dim()), lambdas, correction, exec, tol);
}

ComplexMatrix random_correction(int dim, unsigned long long seed) {
  if (dim < 1) throw std::invalid_argument("correction dimension must be >= 1");
  std::mt19937_64 rng(seed);
  ComplexMatrix r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  return r;
}

}  // namespace epk
