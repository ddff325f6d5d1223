#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

#include "epk/boundary.hpp"

namespace epk {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampleRecord classify_sample(PartitionedFundamental f, const std::map<Position, Interval>& box, std::uint64_t seed,
                             std::uint64_t index, const ToleranceConfig& tol) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  SampleRecord s;
  for (const auto& [pos, iv] : box) {
    const double u = unit_uniform(rng);
    const double x = iv.lo == iv.hi ? iv.lo : iv.lo + (iv.hi - iv.lo) * u;
    f.set(pos, x);
    s.params[pos] = x;
  }
  const auto report = classify_spectrum(eigenvalues(realize_partitioned_fundamental(f)), tol);
  s.classification = report.classification;
  s.min_gap = report.min_gap;
  s.max_imag = report.max_imag;
  return s;
}

bool inside(PartitionedFundamental f, Position entry, double x, const ToleranceConfig& tol) {
  f.set(entry, x);
  return in_physical_domain(realize_partitioned_fundamental(f), tol);
}

std::vector<BoundaryCrossing> trace_slice(const PartitionedFundamental& tmpl, const ScanSlice& slice,
                                          const ToleranceConfig& tol) {
  if (slice.steps < 1) throw std::invalid_argument("slice needs at least one step");
  if (!(slice.range.lo < slice.range.hi)) throw std::invalid_argument("slice range must have lo < hi");
  std::vector<BoundaryCrossing> out;
  const double step = (slice.range.hi - slice.range.lo) / slice.steps;
  double x_prev = slice.range.lo;
  bool in_prev = inside(tmpl, slice.entry, x_prev, tol);
  for (int i = 1; i <= slice.steps; ++i) {
    const double x = i == slice.steps ? slice.range.hi : slice.range.lo + i * step;
    const bool in_x = inside(tmpl, slice.entry, x, tol);
    if (in_x != in_prev) {
      double lo = x_prev, hi = x;
      while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (inside(tmpl, slice.entry, mid, tol) == in_prev)
          lo = mid;
        else
          hi = mid;
      }
      out.push_back({slice.entry, lo, hi, in_prev});
    }
    x_prev = x;
    in_prev = in_x;
  }
  return out;
}

}  // namespace

ScanReport domain_scan(const PartitionedFundamental& tmpl, const std::map<Position, Interval>& box, int samples,
                       std::uint64_t seed, const std::vector<ScanSlice>& slices, Execution exec,
                       const ToleranceConfig& tol) {
  if (samples < 1) throw std::invalid_argument("domain_scan needs samples >= 1");
  for (const auto& [pos, iv] : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
      throw std::invalid_argument("box interval for " + to_key(pos) + " must be finite with lo <= hi");
    PartitionedFundamental probe = tmpl;
    probe.set(pos, iv.lo);  // rejects entries outside the mask up front
  }

  ScanReport report;
  report.samples.resize(samples);
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < samples; ++i) {
      try {
        report.samples[i] = classify_sample(tmpl, box, seed, static_cast<std::uint64_t>(i), tol);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int i = 0; i < samples; ++i)
      report.samples[i] = classify_sample(tmpl, box, seed, static_cast<std::uint64_t>(i), tol);
  }

  int physical = 0;
  for (const auto& s : report.samples) physical += s.classification == Classification::RealNonDegenerate ? 1 : 0;
  report.fraction_physical = static_cast<double>(physical) / samples;

  for (const auto& slice : slices) {
    const auto crossings = trace_slice(tmpl, slice, tol);
    report.crossings.insert(report.crossings.end(), crossings.begin(), crossings.end());
  }
  return report;
}

}  // namespace epk
