#include "epk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "epk/boundary.hpp"
#include "epk/errors.hpp"
#include "epk/hamiltonian.hpp"
#include "epk/io.hpp"
#include "epk/jordan.hpp"
#include "epk/reproduce.hpp"

namespace epk {

using io::json;

namespace {

struct Settings {
  bool json = false;
  ToleranceConfig tol;
  std::uint64_t seed = 0;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << (x == 0.0 ? 0.0 : x);
  return os.str();
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  std::string s = fmt(z.real());
  s += z.imag() < 0 ? "-" : "+";
  return s + fmt(std::abs(z.imag())) + "i";
}

void print_matrix(std::ostream& out, const std::string& title, const ComplexMatrix& m) {
  out << title << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << " ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << " " << std::setw(14) << fmt(m(r, c));
    out << "\n";
  }
}

// Display only: parts below 1e-14 of the spectral radius are printed as 0.
Complex chop(Complex z, double radius) {
  const double floor = 1e-14 * std::max(radius, 1.0);
  return {std::abs(z.real()) < floor ? 0.0 : z.real(), std::abs(z.imag()) < floor ? 0.0 : z.imag()};
}

void print_report(std::ostream& out, const SpectrumReport& r) {
  out << "eigenvalues:";
  for (const auto& z : r.eigenvalues) out << " " << fmt(chop(z, r.spectral_radius));
  out << "\nclassification: " << to_string(r.classification) << "\n";
  out << "min gap: " << (std::isinf(r.min_gap) ? std::string("inf") : fmt(r.min_gap)) << "\n";
  out << "max |Im|: " << fmt(r.max_imag) << "\n";
}

void print_values(std::ostream& out, const std::string& title, const std::vector<double>& v) {
  double radius = 0.0;
  for (double x : v) radius = std::max(radius, std::abs(x));
  out << title << ":";
  for (double x : v) out << " " << fmt(chop(x, radius).real());
  out << "\n";
}

json envelope(const std::string& command) { return {{"schema", io::kSchemaVersion}, {"command", command}}; }

Complex parse_eta(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument("--eta must be \"re,im\" or \"re\", got \"" + s + "\"");
  }
}

/// A fundamental matrix file: {"K", "coeffs"}, {"dims", "entries"} or a plain matrix.
std::pair<ComplexMatrix, PartitionLayout> load_fundamental(const std::string& path) {
  const json j = io::load(path);
  if (j.contains("K")) {
    const auto c = io::fundamental_from_json(j);
    return {realize_fundamental(c), PartitionLayout::single(c.dim())};
  }
  if (j.contains("dims")) {
    const auto f = io::partitioned_from_json(j);
    return {realize_partitioned_fundamental(f), f.layout()};
  }
  const ComplexMatrix m = io::matrix_from_json(j);
  return {m, PartitionLayout::single(static_cast<int>(m.rows()))};
}

ScanSlice parse_slice(const std::string& s) {
  // r,c:lo:hi[:steps]
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3 && parts.size() != 4)
    throw std::invalid_argument("--slice must be \"r,c:lo:hi[:steps]\", got \"" + s + "\"");
  ScanSlice slice;
  slice.entry = parse_key(parts[0]);
  try {
    slice.range = {std::stod(parts[1]), std::stod(parts[2])};
    if (parts.size() == 4) slice.steps = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw std::invalid_argument("--slice bounds must be numbers, got \"" + s + "\"");
  }
  return slice;
}

json boundary_json(const BoundaryPoint& bp) {
  return {{"branch", bp.branch},
          {"params", bp.params},
          {"C", io::to_json(bp.c)},
          {"Q", io::to_json(bp.witness.q)},
          {"J", io::to_json(bp.witness.j)},
          {"det_Q", bp.det_q},
          {"residual", bp.witness.residual},
          {"similarity_holds", bp.similarity_holds},
          {"ep_signature", bp.ep_signature}};
}

void print_boundary(std::ostream& out, const BoundaryPoint& bp) {
  out << "branch: " << bp.branch << "\nparams:";
  for (const auto& [k, v] : bp.params) out << " " << k << "=" << fmt(v);
  out << "\n";
  print_matrix(out, "C", bp.c);
  print_matrix(out, "Q", bp.witness.q);
  print_matrix(out, "J", bp.witness.j);
  out << "det Q: " << fmt(bp.det_q) << "\nresidual max|CQ - QJ|: " << fmt(bp.witness.residual)
      << "\nsimilarity: " << (bp.similarity_holds ? "holds" : "fails") << "\nEP signature:";
  for (int s : bp.ep_signature) out << " " << s;
  out << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional points of Bose-Hubbard matrices and their real-spectrum unfoldings", "epk"};
  app.fallthrough();
  app.require_subcommand(1);

  Settings s;
  double tol_reality = 0.0, tol_gap = 0.0;
  std::uint64_t seed_flag = 0;
  std::string config;
  auto* json_opt = app.add_flag("--json", s.json, "Machine-readable output");
  auto* tol_reality_opt = app.add_option("--tol-reality", tol_reality, "Absolute and relative |Im| tolerance")
                              ->check(CLI::NonNegativeNumber);
  auto* tol_gap_opt = app.add_option("--tol-gap", tol_gap, "Relative degeneracy gap")->check(CLI::NonNegativeNumber);
  auto* seed_opt = app.add_option("--seed", seed_flag, "Random seed (default: EPK_SEED or 0)");
  app.add_option("--config", config, "JSON file with json/tol_reality/tol_gap/seed")->check(CLI::ExistingFile);

  // bh
  auto* bh = app.add_subcommand("bh", "Bose-Hubbard sector matrix and its spectrum");
  BoseHubbardParams bhp;
  bh->add_option("--n", bhp.n, "Boson number N (K = N + 1)")->required();
  bh->add_option("--gamma", bhp.gamma, "Gain/loss γ")->required();
  bh->add_option("--c", bhp.c, "Boson-boson coupling");
  bh->add_option("--v", bhp.v, "Tunneling");

  // jordan
  auto* jordan = app.add_subcommand("jordan", "Transition matrix Q^(K) at the exceptional point γ = 1");
  int jordan_k = 2;
  jordan->add_option("--k", jordan_k, "Dimension K")->required();

  // ep-order
  auto* ep_order = app.add_subcommand("ep-order", "Jordan block sizes at an eigenvalue from rank deficiencies");
  std::string ep_input, ep_eta = "0,0";
  double ep_tol = 1e-8;
  ep_order->add_option("--input", ep_input, "Matrix JSON")->required()->check(CLI::ExistingFile);
  ep_order->add_option("--eta", ep_eta, "Eigenvalue re,im");
  ep_order->add_option("--tol", ep_tol, "Relative singular-value threshold")->check(CLI::PositiveNumber);

  // unfold
  auto* unfold = app.add_subcommand("unfold", "Leading-order energies sqrt(λ) ε_n of a fundamental matrix");
  std::string fundamental_path;
  double unfold_lambda = 0.0;
  unfold->add_option("--fundamental", fundamental_path, "Fundamental matrix JSON")->required()->check(CLI::ExistingFile);
  unfold->add_option("--lambda", unfold_lambda, "Perturbation strength λ > 0")->required();

  // converge
  auto* converge = app.add_subcommand("converge", "Full-matrix energies E_n(λ)/sqrt(λ) against ε_n");
  std::vector<double> lambdas;
  bool with_correction = false, serial = false;
  converge->add_option("--fundamental", fundamental_path, "Fundamental matrix JSON")->required()->check(CLI::ExistingFile);
  converge->add_option("--lambdas", lambdas, "Strictly decreasing λ list")->required()->delimiter(',');
  converge->add_flag("--correction", with_correction, "Add a seeded bounded correction R/Λ to the rescaled matrix");
  converge->add_flag("--serial", serial, "Evaluate λ points serially");

  // partitioned
  auto* partitioned = app.add_subcommand("partitioned", "Partitioned (boson-number mixing) fundamental matrices");
  partitioned->require_subcommand(1);
  auto* templ = partitioned->add_subcommand("template", "Sparsity mask of a layout");
  std::vector<int> dims;
  bool dominant = false;
  templ->add_option("--dims", dims, "Block dimensions, e.g. 2,3,4")->required()->delimiter(',');
  templ->add_flag("--dominant", dominant, "Only the Λ^0 entries");
  auto* peig = partitioned->add_subcommand("eig", "Spectrum and characteristic polynomial");
  std::string peig_input;
  peig->add_option("--input", peig_input, "Partitioned fundamental JSON")->required()->check(CLI::ExistingFile);

  // boundary
  auto* boundary = app.add_subcommand("boundary", "EP boundary witnesses of the [2,3] fundamental matrix");
  boundary->require_subcommand(1);
  double pa = 0, pb = 0, pc = 0, pd = 0, pf = 0;
  auto* sol_a = boundary->add_subcommand("solution-a", "EP5: h = -a-d, f = -a^2/b - c");
  sol_a->add_option("--a", pa)->required();
  sol_a->add_option("--b", pb)->required();
  sol_a->add_option("--c", pc)->required();
  sol_a->add_option("--d", pd)->required();
  auto* sol_b = boundary->add_subcommand("solution-b", "EP4 and its limits: a = b = 0, h = -d");
  sol_b->add_option("--c", pc)->required();
  sol_b->add_option("--d", pd)->required();
  sol_b->add_option("--f", pf)->required();
  auto* deep = boundary->add_subcommand("deep-limit", "c = d = f = 0: reorder J2+J3 to J3+J2");

  // scan
  auto* scan = app.add_subcommand("scan", "Sample a parameter box and classify spectra (JSON lines)");
  std::string scan_template, scan_box;
  int samples = 1000;
  std::vector<std::string> slice_specs;
  scan->add_option("--template", scan_template, "Partitioned fundamental JSON")->required()->check(CLI::ExistingFile);
  scan->add_option("--box", scan_box, "Box JSON {\"r,c\": [lo, hi]}")->required()->check(CLI::ExistingFile);
  scan->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  scan->add_option("--slice", slice_specs, "r,c:lo:hi[:steps] slice to bisect (repeatable)");
  scan->add_flag("--serial", serial, "Classify samples serially");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Recompute published values against the golden files");
  std::string case_id;
  bool all = false;
  std::string golden_dir = default_golden_dir().string();
  repro->add_option("case", case_id, "Case id");
  repro->add_flag("--all", all, "Run every case");
  repro->add_option("--golden-dir", golden_dir, "Directory with <case>.json files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    // Precedence: explicit flag > config file > EPK_SEED > default.
    if (const char* env = std::getenv("EPK_SEED"); env && *env) {
      try {
        s.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("EPK_SEED must be an unsigned integer, got \"") + env + "\"");
      }
    }
    if (!config.empty()) {
      const json c = io::load(config);
      if (c.contains("json")) s.json = c.at("json").get<bool>();
      if (c.contains("tol_reality")) s.tol.reality_abs = s.tol.reality_rel = c.at("tol_reality").get<double>();
      if (c.contains("tol_gap")) s.tol.gap_rel = c.at("tol_gap").get<double>();
      if (c.contains("seed")) s.seed = c.at("seed").get<std::uint64_t>();
      if (s.tol.reality_abs < 0 || s.tol.gap_rel < 0) throw std::invalid_argument("config tolerances must be >= 0");
    }
    if (json_opt->count()) s.json = true;
    if (tol_reality_opt->count()) s.tol.reality_abs = s.tol.reality_rel = tol_reality;
    if (tol_gap_opt->count()) s.tol.gap_rel = tol_gap;
    if (seed_opt->count()) s.seed = seed_flag;

    if (bh->parsed()) {
      const ComplexMatrix h = build_sub_hamiltonian(bhp);
      const auto report = classify_spectrum(eigenvalues(build_sub_hamiltonian_extended(bhp)), s.tol);
      if (s.json) {
        json j = envelope("bh");
        j["params"] = {{"N", bhp.n}, {"gamma", bhp.gamma}, {"v", bhp.v}, {"c", bhp.c}};
        j["matrix"] = io::to_json(h);
        j["spectrum"] = io::to_json(report);
        out << j.dump() << "\n";
      } else {
        print_matrix(out, "H^(" + std::to_string(bhp.dim()) + ")", h);
        print_report(out, report);
      }
    } else if (jordan->parsed()) {
      const auto d = bh_transition_matrix(jordan_k);
      if (s.json) {
        json j = envelope("jordan");
        j["K"] = jordan_k;
        j["Q"] = io::to_json(d.q);
        j["J"] = io::to_json(d.j);
        j["residual"] = d.residual;
        out << j.dump() << "\n";
      } else {
        print_matrix(out, "Q", d.q);
        print_matrix(out, "J", d.j);
        out << "residual max|HQ - QJ|: " << fmt(d.residual) << "\n";
      }
    } else if (ep_order->parsed()) {
      const auto est = ep_order_estimate(io::matrix_from_json(io::load(ep_input)), parse_eta(ep_eta), ep_tol);
      if (est.indeterminate)
        err << "warning: singular values within two decades of the rank threshold; block sizes are indeterminate\n";
      if (s.json) {
        json j = envelope("ep-order");
        j["block_sizes"] = est.block_sizes;
        j["ranks"] = est.ranks;
        j["indeterminate"] = est.indeterminate;
        out << j.dump() << "\n";
      } else {
        out << "block sizes:";
        for (int b : est.block_sizes) out << " " << b;
        out << "\nranks of (H - ηI)^p:";
        for (int r : est.ranks) out << " " << r;
        out << "\n";
      }
    } else if (unfold->parsed()) {
      const auto [c, layout] = load_fundamental(fundamental_path);
      const auto energies = unfold_energies(c, unfold_lambda, s.tol);
      if (s.json) {
        json j = envelope("unfold");
        j["lambda"] = unfold_lambda;
        j["energies"] = energies;
        out << j.dump() << "\n";
      } else {
        print_values(out, "energies sqrt(λ) ε_n", energies);
      }
    } else if (converge->parsed()) {
      const auto [c, layout] = load_fundamental(fundamental_path);
      std::optional<ComplexMatrix> correction;
      if (with_correction) correction = random_correction(layout.total(), s.seed);
      const auto table =
          convergence_study(c, layout, lambdas, correction, serial ? Execution::Serial : Execution::Parallel, s.tol);
      if (s.json) {
        json j = envelope("converge");
        j["epsilons"] = table.epsilons;
        j["rows"] = json::array();
        for (const auto& row : table.rows) {
          json e = json::array();
          for (const auto& z : row.scaled_energies) e.push_back({z.real(), z.imag()});
          j["rows"].push_back(
              {{"lambda", row.lambda}, {"cutoff", row.cutoff}, {"scaled_energies", e}, {"max_deviation", row.max_deviation}});
        }
        if (with_correction) j["seed"] = s.seed;
        out << j.dump() << "\n";
      } else {
        print_values(out, "ε_n", table.epsilons);
        out << std::setw(14) << "lambda" << std::setw(16) << "cutoff" << std::setw(20) << "max deviation" << "\n";
        for (const auto& row : table.rows)
          out << std::setw(14) << fmt(row.lambda) << std::setw(16) << fmt(row.cutoff) << std::setw(20)
              << fmt(row.max_deviation) << "\n";
      }
    } else if (templ->parsed()) {
      const PartitionLayout layout(dims);
      const auto mask = dominant ? dominant_template(layout) : sparse_template(layout);
      if (!layout.covered_by_examples()) err << "warning: layout beyond the two-block and [2,3,...,L] families\n";
      if (s.json) {
        json j = envelope("partitioned template");
        j["dims"] = dims;
        j["dim"] = mask.dim;
        j["stars"] = json::array();
        for (const auto& p : mask.star_positions()) j["stars"].push_back(to_key(p));
        j["star_count"] = mask.star_count();
        out << j.dump() << "\n";
      } else {
        for (int r = 0; r < mask.dim; ++r) {
          for (int c = 0; c < mask.dim; ++c) out << (mask.fixed_ones[r][c] ? " 1" : mask.stars[r][c] ? " *" : " .");
          out << "\n";
        }
        out << "dimension: " << mask.dim << "\nstars: " << mask.star_count() << "\n";
      }
    } else if (peig->parsed()) {
      const auto f = io::partitioned_from_json(io::load(peig_input));
      const ComplexMatrix m = realize_partitioned_fundamental(f);
      const auto report = classify_spectrum(eigenvalues(to_extended(m)), s.tol);
      const auto poly = exact_poly(m);
      std::vector<double> coeffs;
      for (const auto& c : poly.coeffs) coeffs.push_back(c.real());
      if (s.json) {
        json j = envelope("partitioned eig");
        j["matrix"] = io::to_json(m);
        j["spectrum"] = io::to_json(report);
        j["characteristic_polynomial"] = coeffs;
        j["polynomial_exact"] = poly.exact;
        out << j.dump() << "\n";
      } else {
        print_matrix(out, "C", m);
        print_values(out, std::string("characteristic polynomial") + (poly.exact ? "" : " (floating)"), coeffs);
        print_report(out, report);
      }
    } else if (sol_a->parsed() || sol_b->parsed() || deep->parsed()) {
      const BoundaryPoint bp = sol_a->parsed()   ? solution_A(pa, pb, pc, pd)
                               : sol_b->parsed() ? solution_B(pc, pd, pf)
                                                 : solution_B_deep_limit();
      if (s.json) {
        json j = envelope("boundary");
        j["point"] = boundary_json(bp);
        out << j.dump() << "\n";
      } else {
        print_boundary(out, bp);
      }
    } else if (scan->parsed()) {
      const auto tmpl = io::partitioned_from_json(io::load(scan_template));
      const auto box = io::box_from_json(io::load(scan_box));
      std::vector<ScanSlice> slices;
      for (const auto& spec : slice_specs) slices.push_back(parse_slice(spec));
      const auto report = domain_scan(tmpl, box, samples, s.seed, slices,
                                      serial ? Execution::Serial : Execution::Parallel, s.tol);
      for (const auto& rec : report.samples) out << io::to_json(rec).dump() << "\n";
      for (const auto& c : report.crossings)
        out << json{{"crossing", {{"entry", to_key(c.entry)}, {"lo", c.lo}, {"hi", c.hi}, {"inside_at_lo", c.inside_at_lo}}}}
                   .dump()
            << "\n";
      out << json{{"summary",
                   {{"schema", io::kSchemaVersion},
                    {"samples", samples},
                    {"seed", s.seed},
                    {"fraction_real_nondegenerate", report.fraction_physical},
                    {"tolerances", io::to_json(s.tol)}}}}
                 .dump()
          << "\n";
    } else if (repro->parsed()) {
      if (all == !case_id.empty()) throw std::invalid_argument("reproduce needs exactly one of <case> or --all");
      std::vector<std::string> ids = all ? reproduce_cases() : std::vector<std::string>{case_id};
      bool ok = true;
      json results = json::array();
      for (const auto& id : ids) {
        const auto r = reproduce(id, golden_dir);
        ok = ok && r.pass();
        if (s.json) {
          json checks = json::array();
          for (const auto& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"expected", c.expected},
                              {"actual", c.actual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
          results.push_back({{"case", id}, {"pass", r.pass()}, {"checks", checks}});
        } else {
          out << id << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
          if (!r.note.empty()) out << "  note: " << r.note << "\n";
          for (const auto& c : r.checks)
            out << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << "\n    expected  " << c.expected
                << "\n    actual    " << c.actual << "\n    tolerance " << fmt(c.tolerance) << "\n";
        }
      }
      if (s.json) {
        json j = envelope("reproduce");
        j["results"] = results;
        j["pass"] = ok;
        out << j.dump() << "\n";
      }
      if (!ok) {
        err << "error: reproduction failed\n";
        return kExitDomain;
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace epk
