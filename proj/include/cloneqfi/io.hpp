// io.hpp
// CSV and JSON emission for curves and scan records. CSV doubles carry 17
// significant digits so parsed values round-trip bit-exactly.

#pragma once

#include <string>

#include <json.hpp>

#include "cloneqfi/scan.hpp"

namespace cloneqfi {

/// Shortest-fixed formatting with 17 significant digits (%.17g).
std::string format_double(double x);

/// Header row plus one newline-terminated row per point.
std::string curve_csv(const Curve& curve);

/// Rows d, global_min_eta_a, symmetric_point, is_symmetric, extrema_count and
/// a trailing summary line with both critical-dimension conventions.
std::string scan_csv(const ScanRecord& record);

nlohmann::json curve_points_json(const Curve& curve);
nlohmann::json scan_entries_json(const ScanRecord& record);
nlohmann::json scan_summary_json(const ScanRecord& record);

}  // namespace cloneqfi
