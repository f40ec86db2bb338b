#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scai/metrics.hpp"

namespace scai {

// Field names and order follow MetricsReport. `inflation` is null when
// undefined; `yearly_scr` is an object keyed by year strings.
nlohmann::ordered_json to_json(const MetricsReport& report);
// Throws Error{MalformedRecord}.
MetricsReport report_from_json(const nlohmann::json& j);

// Pretty-printed JSON array (2-space indent, trailing newline).
void write_reports_json(const std::vector<MetricsReport>& reports, std::ostream& out);
std::vector<MetricsReport> read_reports_json(std::istream& in);

std::string reports_csv_header();
// One row, no trailing newline. yearly_scr is packed as "year:scr;year:scr".
std::string to_csv_row(const MetricsReport& report);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace scai
