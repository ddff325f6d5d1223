#include "epk/partitioned.hpp"

#include <cmath>
#include <stdexcept>

#include "epk/errors.hpp"

namespace epk {

int SparsityMask::star_count() const {
  int n = 0;
  for (const auto& row : stars)
    for (bool s : row) n += s ? 1 : 0;
  return n;
}

std::vector<Position> SparsityMask::star_positions() const {
  std::vector<Position> out;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (stars[r][c]) out.push_back({r, c});
  return out;
}

namespace {

SparsityMask make_mask(const PartitionLayout& layout, bool dominant_only) {
  SparsityMask mask;
  mask.dim = layout.total();
  mask.fixed_ones.assign(mask.dim, std::vector<bool>(mask.dim, false));
  mask.stars.assign(mask.dim, std::vector<bool>(mask.dim, false));
  for (int r = 0; r < mask.dim; ++r)
    for (int c = 0; c < mask.dim; ++c) {
      const auto [br, lr] = layout.locate(r);
      const auto [bc, lc] = layout.locate(c);
      if (br == bc && lc == lr + 1) mask.fixed_ones[r][c] = true;
      mask.stars[r][c] = dominant_only ? lr - lc == 1 : lr > lc;
    }
  return mask;
}

void require_dim(const ComplexMatrix& m, const PartitionLayout& layout) {
  if (m.rows() != layout.total() || m.cols() != layout.total())
    throw std::invalid_argument("matrix dimension " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                " does not match layout total " + std::to_string(layout.total()));
}

}  // namespace

SparsityMask sparse_template(const PartitionLayout& layout) { return make_mask(layout, false); }

SparsityMask dominant_template(const PartitionLayout& layout) { return make_mask(layout, true); }

int truncated_dimension(int max_block) {
  if (max_block < 2) throw std::invalid_argument("L must be >= 2");
  return (max_block * max_block + max_block - 2) / 2;
}

ComplexMatrix rescale_partitioned(const ComplexMatrix& w, const PartitionLayout& layout, double cutoff) {
  require_dim(w, layout);
  if (!(cutoff > 0.0)) throw std::invalid_argument("Λ must be positive");
  ComplexMatrix m(w.rows(), w.cols());
  for (int r = 0; r < layout.total(); ++r)
    for (int c = 0; c < layout.total(); ++c) m(r, c) = w(r, c) * std::pow(cutoff, layout.rescale_power(r, c));
  return m;
}

ComplexMatrix leading_order_partitioned(const ComplexMatrix& m, const PartitionLayout& layout, double cutoff) {
  require_dim(m, layout);
  if (!(cutoff > 0.0)) throw std::invalid_argument("Λ must be positive");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (int r = 0; r < layout.total(); ++r)
    for (int c = 0; c < layout.total(); ++c)
      if (layout.rescale_power(r, c) >= 0) out(r, c) = m(r, c);
  return out;
}

PartitionedFundamental::PartitionedFundamental(PartitionLayout layout)
    : layout_(std::move(layout)), mask_(sparse_template(layout_)) {}

void PartitionedFundamental::set(Position p, double value) {
  if (p.row < 0 || p.col < 0 || p.row >= mask_.dim || p.col >= mask_.dim || !mask_.stars[p.row][p.col])
    throw std::invalid_argument("entry " + to_key(p) + " is outside the sparsity mask");
  if (!std::isfinite(value)) throw std::invalid_argument("entry " + to_key(p) + " must be finite");
  entries_[p] = value;
}

double PartitionedFundamental::get(Position p) const {
  const auto it = entries_.find(p);
  return it == entries_.end() ? 0.0 : it->second;
}

ComplexMatrix realize_partitioned_fundamental(const PartitionedFundamental& f) {
  ComplexMatrix m = partitioned_jordan(f.layout(), 0.0);
  for (const auto& [p, v] : f.entries()) m(p.row, p.col) = v;
  return m;
}

const std::map<std::string, Position>& c23_positions() {
  static const std::map<std::string, Position> names = {
      {"a", {1, 0}}, {"b", {1, 2}}, {"c", {3, 0}}, {"d", {3, 2}},
      {"e", {4, 0}}, {"f", {4, 1}}, {"g", {4, 2}}, {"h", {4, 3}},
  };
  return names;
}

const std::map<std::string, Position>& c234_positions() {
  static const std::map<std::string, Position> names = {
      {"a", {1, 0}}, {"b", {1, 2}}, {"c", {1, 5}}, {"d", {3, 0}}, {"e", {3, 2}}, {"f", {3, 5}},
      {"h", {4, 1}}, {"j", {4, 3}}, {"l", {4, 6}}, {"o", {6, 0}}, {"m", {6, 2}}, {"n", {6, 5}},
      {"u", {7, 1}}, {"q", {7, 3}}, {"s", {7, 6}}, {"x", {8, 4}}, {"w", {8, 7}},
  };
  return names;
}

namespace {

PartitionedFundamental make_named(PartitionLayout layout, const std::map<std::string, Position>& names,
                                  const std::map<std::string, double>& values) {
  PartitionedFundamental f(std::move(layout));
  for (const auto& [name, v] : values) {
    const auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown parameter name \"" + name + "\"");
    f.set(it->second, v);
  }
  return f;
}

}  // namespace

PartitionedFundamental make_c23(const std::map<std::string, double>& values) {
  return make_named(PartitionLayout({2, 3}), c23_positions(), values);
}

PartitionedFundamental make_c234(const std::map<std::string, double>& values) {
  return make_named(PartitionLayout({2, 3, 4}), c234_positions(), values);
}

ConjectureCheck check_conjecture(const std::string& label, const PartitionedFundamental& f,
                                 const std::vector<double>& lambdas, const std::optional<ComplexMatrix>& correction,
                                 const ToleranceConfig& tol) {
  ConjectureCheck check;
  check.label = label;
  ConvergenceTable table;
  try {
    table = convergence_study(realize_partitioned_fundamental(f), f.layout(), lambdas, correction, Execution::Serial,
                              tol);
  } catch (const NonRealFundamentalSpectrum&) {
    return check;
  }
  check.fundamental_real_nondegenerate = true;
  for (const auto& row : table.rows) check.deviations.push_back(row.max_deviation);
  check.deviations_decrease = strictly_decreasing(check.deviations);
  return check;
}

}  // namespace epk
