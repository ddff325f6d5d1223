#include "epk/reproduce.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "epk/boundary.hpp"
#include "epk/hamiltonian.hpp"
#include "epk/io.hpp"
#include "epk/jordan.hpp"
#include "epk/perturbation.hpp"

#ifndef EPK_GOLDEN_DIR
#define EPK_GOLDEN_DIR "data/golden"
#endif

namespace epk {

using io::json;

bool CaseResult::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<std::string>& reproduce_cases() {
  static const std::vector<std::string> ids = {"bh-spectrum",   "q23",           "quintic-exact", "lemma2-stage0",
                                               "lemma2-stage1", "lemma2-stage2", "ep5-a",         "appendix-b",
                                               "chebyshev",     "converge-23"};
  return ids;
}

std::filesystem::path default_golden_dir() {
  if (const char* env = std::getenv("EPK_GOLDEN_DIR"); env && *env) return env;
  return EPK_GOLDEN_DIR;
}

namespace {

using Quantities = std::map<std::string, json>;

json reals(const std::vector<Complex>& values) {
  json out = json::array();
  for (const auto& z : values) out.push_back(z.real());
  return out;
}

Quantities bh_spectrum(const json& inputs) {
  Quantities q;
  for (const auto& s : inputs.at("sectors")) {
    const int k = s.at("K").get<int>();
    const double gamma = s.at("gamma").get<double>();
    std::ostringstream name;
    name << "K=" << k << " gamma=" << gamma;
    q[name.str()] = reals(eigenvalues(build_sub_hamiltonian_extended({gamma, 1.0, 0.0, k - 1})));
  }
  return q;
}

Quintic23Params c23_params(const json& entries) {
  Quintic23Params p;
  p.a = entries.at("a").get<double>();
  p.b = entries.at("b").get<double>();
  p.c = entries.at("c").get<double>();
  p.d = entries.at("d").get<double>();
  p.e = entries.at("e").get<double>();
  p.f = entries.at("f").get<double>();
  p.g = entries.at("g").get<double>();
  p.h = entries.at("h").get<double>();
  return p;
}

Quantities q23(const json& inputs) {
  const auto report = classify_spectrum(eigenvalues(to_extended(realize_c23(c23_params(inputs.at("entries"))))));
  return {{"eigenvalues (4 decimals)", reals(report.eigenvalues)}, {"classification", to_string(report.classification)}};
}

Quantities quintic_exact(const json& inputs) {
  const auto p = c23_params(inputs.at("entries"));
  return {{"eigenvalues", reals(eigenvalues(to_extended(realize_c23(p))))},
          {"closed-form quintic roots", reals(quintic_roots_closed_form(p))},
          {"secular polynomial", json(secular_poly_23(p))}};
}

Quantities lemma2(const json& inputs) {
  const int stage = inputs.at("stage").get<int>();
  auto schedule = lemma2_schedule();
  schedule.resize(stage);
  const auto log = degeneracy_breaking_search(lemma2_start(), schedule);
  const auto& last = log.stages.back();
  Quantities q = {{"eigenvalues", reals(last.report.eigenvalues)},
                  {"classification", to_string(last.report.classification)},
                  {"zero root multiplicity", last.zero_multiplicity}};
  json poly = json::array();
  for (const auto& c : exact_poly(realize_partitioned_fundamental(lemma2_start())).coeffs) poly.push_back(c.real());
  q["characteristic polynomial"] = poly;
  return q;
}

Quantities ep5_a(const json& inputs) {
  const auto bp = solution_A(inputs.at("a").get<double>(), inputs.at("b").get<double>(), inputs.at("c").get<double>(),
                             inputs.at("d").get<double>());
  json poly = json::array();
  for (const auto& c : exact_poly(bp.c).coeffs) poly.push_back(c.real());
  return {{"secular polynomial", poly},
          {"det Q_A", bp.det_q},
          {"similarity residual", bp.witness.residual},
          {"EP signature", bp.ep_signature}};
}

Quantities appendix_b(const json& inputs) {
  Quantities q;
  auto add = [&q](const std::string& prefix, const ExactWitness& w, const std::vector<int>& signature) {
    q[prefix + " det Q"] = w.det_q.str();
    q[prefix + " similarity"] = w.similar;
    q[prefix + " EP signature"] = signature;
  };
  for (const char* branch : {"generic", "c0", "c0f0"}) {
    const auto v = inputs.at(branch).get<std::vector<int>>();
    const auto w = solution_B_exact(v.at(0), v.at(1), v.at(2));
    add(branch, w, solution_B(v.at(0), v.at(1), v.at(2)).ep_signature);
  }
  add("deep", solution_B_deep_limit_exact(), solution_B_deep_limit().ep_signature);
  return q;
}

Quantities chebyshev(const json& inputs) {
  const auto range = inputs.at("K").get<std::vector<int>>();
  Quantities q;
  for (int k = range.at(0); k <= range.at(1); ++k) {
    const auto report = classify_spectrum(eigenvalues(realize_fundamental(FundamentalMatrix::kronecker_delta(k))));
    q["K=" + std::to_string(k)] = reals(report.eigenvalues);
  }
  return q;
}

Quantities converge_23(const json& inputs) {
  const auto lambdas = inputs.at("lambdas").get<std::vector<double>>();
  const auto rows = inputs.at("correction").get<std::vector<std::vector<double>>>();
  ComplexMatrix r(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) r(i, j) = rows[i].at(j);

  Quantities q;
  auto add = [&](const std::string& label, const ConvergenceTable& t) {
    std::vector<double> dev;
    for (const auto& row : t.rows) dev.push_back(row.max_deviation);
    q[label + " deviations"] = dev;
    q[label + " deviations decrease"] = strictly_decreasing(dev);
    q[label + " deviation at smallest lambda"] = dev.back();
  };
  add("[2,3]", convergence_study(realize_c23(c23_params(inputs.at("entries"))), PartitionLayout({2, 3}), lambdas, r));
  add("K=5", convergence_study(FundamentalMatrix::kronecker_delta(5), lambdas, r));
  return q;
}

const std::map<std::string, std::function<Quantities(const json&)>>& computations() {
  static const std::map<std::string, std::function<Quantities(const json&)>> table = {
      {"bh-spectrum", bh_spectrum},   {"q23", q23},       {"quintic-exact", quintic_exact},
      {"lemma2-stage0", lemma2},      {"lemma2-stage1", lemma2}, {"lemma2-stage2", lemma2},
      {"ep5-a", ep5_a},               {"appendix-b", appendix_b}, {"chebyshev", chebyshev},
      {"converge-23", converge_23},
  };
  return table;
}

std::string show(const json& v) {
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(12);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + show(v[i]);
    return s + "]";
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool compare(const json& expected, const json& actual, const std::string& mode, double tol) {
  if (mode == "exact") return expected == actual;
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!compare(expected[i], actual[i], mode, tol)) return false;
    return true;
  }
  if (!expected.is_number() || !actual.is_number()) return false;
  const double e = expected.get<double>();
  const double a = actual.get<double>();
  if (!std::isfinite(a)) return false;
  if (mode == "abs") return std::abs(a - e) <= tol;
  if (mode == "rel") return std::abs(a - e) <= tol * std::abs(e);
  if (mode == "max") return a <= e;
  throw std::invalid_argument("unknown comparison mode \"" + mode + "\"");
}

}  // namespace

CaseResult reproduce(const std::string& id, const std::filesystem::path& golden_dir) {
  const auto& table = computations();
  const auto it = table.find(id);
  if (it == table.end()) throw std::invalid_argument("unknown reproduce case \"" + id + "\"");

  const json golden = io::load(golden_dir / (id + ".json"));
  CaseResult result;
  result.id = id;
  if (golden.contains("note")) result.note = golden.at("note").get<std::string>();
  const Quantities actual = it->second(golden.value("inputs", json::object()));

  for (const auto& check : golden.at("checks")) {
    CaseCheck c;
    c.name = check.at("name").get<std::string>();
    c.tolerance = check.value("tolerance", 0.0);
    const json& expected = check.at("expected");
    c.expected = show(expected);
    const auto found = actual.find(c.name);
    if (found == actual.end()) {
      c.actual = "(not computed)";
    } else {
      c.actual = show(found->second);
      c.pass = compare(expected, found->second, check.value("compare", std::string("abs")), c.tolerance);
    }
    result.checks.push_back(std::move(c));
  }
  return result;
}

}  // namespace epk
