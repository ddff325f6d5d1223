#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "epk/boundary.hpp"
#include "epk/partitioned.hpp"
#include "epk/perturbation.hpp"
#include "epk/spectral.hpp"

namespace epk::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "epk.v1";

json load(const std::filesystem::path& path);

/// {"dim": n, "entries": [[re, im], ...]} row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"K": k, "coeffs": {"j,m": value}}; absent coefficients are 0.
json to_json(const FundamentalMatrix& c);
FundamentalMatrix fundamental_from_json(const json& j);

/// {"dims": [...], "entries": {"r,c": value}}
json to_json(const PartitionedFundamental& f);
PartitionedFundamental partitioned_from_json(const json& j);

json to_json(const ToleranceConfig& t);
ToleranceConfig tolerances_from_json(const json& j);

/// min_gap = +inf is written as null.
json to_json(const SpectrumReport& r);
SpectrumReport report_from_json(const json& j);

/// {"r,c": [lo, hi]} or {"r,c": value} for a point.
std::map<Position, Interval> box_from_json(const json& j);

json to_json(const SampleRecord& s);

}  // namespace epk::io
