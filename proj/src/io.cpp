#include "epk/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace epk::io {

json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
  }
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw std::invalid_argument(what + " must be a number");
  return j.get<double>();
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"dim", m.rows()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto& dim_j = field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long>() < 1) throw std::invalid_argument("\"dim\" must be a positive integer");
  const long n = dim_j.get<long>();
  const auto& entries = field(j, "entries");
  if (!entries.is_array() || static_cast<long>(entries.size()) != n * n)
    throw std::invalid_argument("\"entries\" must hold dim*dim values");
  ComplexMatrix m(n, n);
  for (long i = 0; i < n * n; ++i) {
    const auto& e = entries[i];
    Complex z;
    if (e.is_number())
      z = number(e, "matrix entry");
    else if (e.is_array() && e.size() == 2)
      z = Complex(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
    else
      throw std::invalid_argument("matrix entry must be a number or [re, im]");
    m(i / n, i % n) = z;
  }
  return m;
}

json to_json(const FundamentalMatrix& c) {
  json coeffs = json::object();
  for (auto [j, m] : c.indices())
    if (c.coeff(j, m) != 0.0) coeffs[std::to_string(j) + "," + std::to_string(m)] = c.coeff(j, m);
  return {{"K", c.dim()}, {"coeffs", coeffs}};
}

FundamentalMatrix fundamental_from_json(const json& j) {
  const auto& k = field(j, "K");
  if (!k.is_number_integer()) throw std::invalid_argument("\"K\" must be an integer");
  FundamentalMatrix c(k.get<int>());
  if (j.contains("coeffs")) {
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_object()) throw std::invalid_argument("\"coeffs\" must be an object");
    for (const auto& [key, value] : coeffs.items()) {
      const Position p = parse_key(key);  // "j,m"
      c.set_coeff(p.row, p.col, number(value, "coefficient " + key));
    }
  }
  return c;
}

json to_json(const PartitionedFundamental& f) {
  json entries = json::object();
  for (const auto& [p, v] : f.entries()) entries[to_key(p)] = v;
  return {{"dims", f.layout().dims()}, {"entries", entries}};
}

PartitionedFundamental partitioned_from_json(const json& j) {
  const auto& dims = field(j, "dims");
  if (!dims.is_array()) throw std::invalid_argument("\"dims\" must be an array");
  PartitionedFundamental f{PartitionLayout(dims.get<std::vector<int>>())};
  if (j.contains("entries")) {
    const auto& entries = j.at("entries");
    if (!entries.is_object()) throw std::invalid_argument("\"entries\" must be an object");
    for (const auto& [key, value] : entries.items()) f.set(parse_key(key), number(value, "entry " + key));
  }
  return f;
}

json to_json(const ToleranceConfig& t) {
  return {{"reality_abs", t.reality_abs}, {"reality_rel", t.reality_rel}, {"gap_rel", t.gap_rel}};
}

ToleranceConfig tolerances_from_json(const json& j) {
  ToleranceConfig t;
  if (j.contains("reality_abs")) t.reality_abs = number(j.at("reality_abs"), "reality_abs");
  if (j.contains("reality_rel")) t.reality_rel = number(j.at("reality_rel"), "reality_rel");
  if (j.contains("gap_rel")) t.gap_rel = number(j.at("gap_rel"), "gap_rel");
  if (t.reality_abs < 0 || t.reality_rel < 0 || t.gap_rel < 0) throw std::invalid_argument("tolerances must be >= 0");
  return t;
}

json to_json(const SpectrumReport& r) {
  json eigs = json::array();
  for (const auto& z : r.eigenvalues) eigs.push_back({z.real(), z.imag()});
  json gap = std::isinf(r.min_gap) ? json(nullptr) : json(r.min_gap);
  return {{"schema", kSchemaVersion},
          {"eigenvalues", eigs},
          {"classification", to_string(r.classification)},
          {"min_gap", gap},
          {"max_imag", r.max_imag},
          {"spectral_radius", r.spectral_radius},
          {"tolerances", to_json(r.tolerances)}};
}

SpectrumReport report_from_json(const json& j) {
  SpectrumReport r;
  for (const auto& e : field(j, "eigenvalues")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("eigenvalue must be [re, im]");
    r.eigenvalues.emplace_back(number(e[0], "eigenvalue"), number(e[1], "eigenvalue"));
  }
  r.classification = classification_from_string(field(j, "classification").get<std::string>());
  const auto& gap = field(j, "min_gap");
  r.min_gap = gap.is_null() ? std::numeric_limits<double>::infinity() : number(gap, "min_gap");
  r.max_imag = number(field(j, "max_imag"), "max_imag");
  r.spectral_radius = number(field(j, "spectral_radius"), "spectral_radius");
  r.tolerances = tolerances_from_json(field(j, "tolerances"));
  return r;
}

std::map<Position, Interval> box_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("box must be an object of \"r,c\": [lo, hi]");
  std::map<Position, Interval> box;
  for (const auto& [key, value] : j.items()) {
    Interval iv;
    if (value.is_number()) {
      iv.lo = iv.hi = value.get<double>();
    } else if (value.is_array() && value.size() == 2) {
      iv.lo = number(value[0], "box bound " + key);
      iv.hi = number(value[1], "box bound " + key);
    } else {
      throw std::invalid_argument("box entry " + key + " must be a number or [lo, hi]");
    }
    box[parse_key(key)] = iv;
  }
  return box;
}

json to_json(const SampleRecord& s) {
  json params = json::object();
  for (const auto& [p, v] : s.params) params[to_key(p)] = v;
  json gap = std::isinf(s.min_gap) ? json(nullptr) : json(s.min_gap);
  return {{"params", params},
          {"classification", to_string(s.classification)},
          {"min_gap", gap},
          {"max_imag", s.max_imag}};
}

}  // namespace epk::io
