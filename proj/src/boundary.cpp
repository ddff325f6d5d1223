#include "epk/boundary.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "epk/errors.hpp"

namespace epk {

std::map<std::string, double> Quintic23Params::as_map() const {
  return {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"f", f}, {"g", g}, {"h", h}};
}

ComplexMatrix realize_c23(const Quintic23Params& p) { return realize_partitioned_fundamental(make_c23(p.as_map())); }

namespace {

void require_restricted(const Quintic23Params& p) {
  if (!p.restricted()) throw std::invalid_argument("closed-form quintic needs e = 0 and g = 0");
}

}  // namespace

std::vector<Complex> quintic_roots_closed_form(const Quintic23Params& p) {
  require_restricted(p);
  const Complex s = p.a + p.d + p.h;
  const Complex disc = std::sqrt(Complex(4.0 * p.b * (p.c + p.f) + (p.d + p.h - p.a) * (p.d + p.h - p.a), 0.0));
  const Complex plus = std::sqrt((s + disc) / 2.0);
  const Complex minus = std::sqrt((s - disc) / 2.0);
  std::vector<Complex> roots = {0.0, plus, -plus, minus, -minus};
  sort_spectrum(roots);
  return roots;
}

std::vector<double> secular_poly_23(const Quintic23Params& p) {
  require_restricted(p);
  return {1.0, 0.0, -(p.a + p.d + p.h), 0.0, p.a * (p.d + p.h) - p.b * (p.f + p.c), 0.0};
}

Polynomial exact_poly(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("exact_poly needs a square matrix");
  Polynomial out;
  const int n = static_cast<int>(m.rows());
  if (n <= kExactPolyMaxDim) {
    for (const auto& c : exact::characteristic_polynomial(exact::from_double(m)))
      out.coeffs.emplace_back(c.re.convert_to<double>(), c.im.convert_to<double>());
    return out;
  }
  out.exact = false;
  out.coeffs.assign(n + 1, 0.0);
  out.coeffs[0] = 1.0;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    acc = m * acc;
    acc.diagonal().array() += out.coeffs[k - 1];
    out.coeffs[k] = -(m * acc).trace() / static_cast<double>(k);
  }
  return out;
}

namespace {

template <class T>
using Grid5 = std::array<std::array<T, 5>, 5>;

template <class T>
Grid5<T> zero_grid() {
  Grid5<T> g;
  for (auto& row : g) row.fill(T(0));
  return g;
}

/// [2, 3] fundamental matrix with the given entries; e = g = 0.
template <class T>
Grid5<T> c23_grid(const T& a, const T& b, const T& c, const T& d, const T& f, const T& h) {
  Grid5<T> m = zero_grid<T>();
  m[0][1] = T(1);
  m[2][3] = T(1);
  m[3][4] = T(1);
  m[1][0] = a;
  m[1][2] = b;
  m[3][0] = c;
  m[3][2] = d;
  m[4][1] = f;
  m[4][3] = h;
  return m;
}

template <class T>
struct BranchB {
  std::string name;
  Grid5<T> c;
  Grid5<T> q;
  JordanSpec j;
  T det_formula;
};

const JordanSpec kEp4Ep1 = {{4, 0.0}, {1, 0.0}};
const JordanSpec kEp3Ep2 = {{3, 0.0}, {2, 0.0}};

template <class T>
BranchB<T> deep_limit_branch() {
  const T o(0), i(1);
  BranchB<T> b;
  b.name = "deep";
  b.c = c23_grid<T>(o, o, o, o, o, o);
  b.q = {{{o, i, o, -i, o}, {o, o, i, o, -i}, {i, o, o, o, o}, {o, i, o, o, o}, {o, o, i, o, o}}};
  b.j = kEp3Ep2;
  b.det_formula = T(1);
  return b;
}

template <class T>
BranchB<T> branch_b(const T& c, const T& d, const T& f) {
  const T o(0), i(1);
  BranchB<T> b;
  b.c = c23_grid<T>(o, o, c, d, f, -d);
  if (c != o) {
    const T alpha = f + c;
    if (alpha == o) throw SingularTransition("solution B: α = f + c = 0 makes the transition matrix singular");
    b.name = "generic";
    b.q = {{{o, o, i, -i / c, -i / c},
            {o, o, o, i, o},
            {alpha, o, o, o, o},
            {o, alpha, o, o, o},
            {-alpha * d, o, f, i, i}}};
    b.j = kEp4Ep1;
    b.det_formula = alpha * alpha * alpha / c;
  } else if (f != o) {
    b.name = "c0";
    b.q = {{{o, o, i, -i / f, -i / f},
            {o, o, o, i, o},
            {f, o, o, o, o},
            {o, f, o, o, o},
            {-f * d, o, f, o, o}}};
    b.j = kEp4Ep1;
    b.det_formula = f * f;
  } else if (d != o) {
    b.name = "c0f0";
    b.q = {{{o, i, o, -i, o}, {o, o, i, o, -i}, {d, o, i, o, o}, {o, d, o, o, o}, {-d * d, o, o, o, o}}};
    b.j = kEp3Ep2;
    b.det_formula = d * d * d;
  } else {
    return deep_limit_branch<T>();
  }
  return b;
}

ComplexMatrix to_matrix(const Grid5<double>& g) {
  ComplexMatrix m(5, 5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = g[r][c];
  return m;
}

exact::RationalMatrix to_matrix(const Grid5<exact::Rational>& g) {
  exact::RationalMatrix m(5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = g[r][c];
  return m;
}

BoundaryPoint finish(std::map<std::string, double> params, std::string branch, ComplexMatrix c, ComplexMatrix q,
                     const JordanSpec& spec, double tol) {
  BoundaryPoint bp;
  bp.params = std::move(params);
  bp.branch = std::move(branch);
  bp.witness.q = std::move(q);
  bp.witness.j = jordan_matrix(spec);
  const auto sim = verify_similarity(c, bp.witness.q, bp.witness.j, tol);
  bp.witness.residual = sim.residual;
  bp.similarity_holds = sim.holds;
  bp.det_q = bp.witness.q.partialPivLu().determinant().real();
  bp.ep_signature = ep_order_estimate(c, 0.0).block_sizes;
  bp.c = std::move(c);
  return bp;
}

}  // namespace

double solution_A_det_formula(double a, double b, double c) {
  const double big_f = -a * a / b - c;
  return -std::pow(big_f, 5) * b * b;
}

BoundaryPoint solution_A(double a, double b, double c, double d, double tol) {
  if (b == 0.0) throw SingularTransition("solution A needs b != 0");
  const double big_f = -a * a / b - c;
  if (big_f * b == 0.0) throw SingularTransition("solution A: F b = 0 makes Q_A singular");
  const double h = -a - d;
  const double f = big_f;
  const ComplexMatrix cm = to_matrix(c23_grid<double>(a, b, c, d, f, h));

  ComplexMatrix q = ComplexMatrix::Zero(5, 5);
  q(0, 0) = -big_f * b;
  q(0, 2) = a;
  q(0, 4) = 1.0;
  q(1, 1) = -big_f * b;
  q(1, 3) = a;
  q(2, 0) = a * big_f;
  q(2, 2) = c;
  q(3, 1) = a * big_f;
  q(3, 3) = c;
  q(4, 0) = -(a * a + big_f * b + a * d) * big_f;
  q(4, 2) = -(2.0 * c * a + c * d + a * a * a / b);

  return finish({{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", 0.0}, {"f", f}, {"g", 0.0}, {"h", h}, {"F", big_f}},
                "A", cm, q, {{5, 0.0}}, tol);
}

BoundaryPoint solution_B(double c, double d, double f, double tol) {
  const auto b = branch_b<double>(c, d, f);
  return finish({{"a", 0.0}, {"b", 0.0}, {"c", c}, {"d", d}, {"e", 0.0}, {"f", f}, {"g", 0.0}, {"h", -d}}, b.name,
                to_matrix(b.c), to_matrix(b.q), b.j, tol);
}

BoundaryPoint solution_B_deep_limit() {
  const auto b = deep_limit_branch<double>();
  return finish({{"a", 0.0}, {"b", 0.0}, {"c", 0.0}, {"d", 0.0}, {"e", 0.0}, {"f", 0.0}, {"g", 0.0}, {"h", 0.0}},
                b.name, to_matrix(b.c), to_matrix(b.q), b.j, 0.0);
}

namespace {

ExactWitness exact_witness(const BranchB<exact::Rational>& b) {
  ExactWitness w;
  w.branch = b.name;
  w.c = to_matrix(b.c);
  w.q = to_matrix(b.q);
  const ComplexMatrix j = jordan_matrix(b.j);
  w.j = exact::RationalMatrix(5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) w.j(r, c) = exact::Rational(j(r, c).real());
  w.det_q = exact::determinant(w.q);
  w.det_formula = b.det_formula;
  w.similar = w.c * w.q == w.q * w.j;
  return w;
}

}  // namespace

ExactWitness solution_B_exact(const exact::Rational& c, const exact::Rational& d, const exact::Rational& f) {
  return exact_witness(branch_b<exact::Rational>(c, d, f));
}

ExactWitness solution_B_deep_limit_exact() { return exact_witness(deep_limit_branch<exact::Rational>()); }

SearchLog degeneracy_breaking_search(PartitionedFundamental start, const std::vector<SearchStage>& schedule,
                                     const ToleranceConfig& tol) {
  SearchLog log;
  auto record = [&](const std::string& label) {
    StageResult s;
    s.label = label;
    s.entries = start.entries();
    s.report = classify_spectrum(
        eigenvalues_via_exact_polynomial(realize_partitioned_fundamental(start), &s.zero_multiplicity), tol);
    if (log.first_success < 0 && s.report.classification == Classification::RealNonDegenerate)
      log.first_success = static_cast<int>(log.stages.size());
    log.stages.push_back(std::move(s));
  };
  record("start");
  for (const auto& stage : schedule) {
    for (const auto& p : stage.entries) start.add(p, stage.shift);
    record(stage.label);
  }
  return log;
}

PartitionedFundamental lemma2_start() {
  std::map<std::string, double> values;
  for (const auto& [name, pos] : c234_positions()) values[name] = 1.0;
  return make_c234(values);
}

std::vector<SearchStage> lemma2_schedule() {
  const auto& at = c234_positions();
  return {
      {"b += -1/10", {at.at("b")}, -0.1},
      {"a, l, u += -1/100", {at.at("a"), at.at("l"), at.at("u")}, -0.01},
  };
}

}  // namespace epk
