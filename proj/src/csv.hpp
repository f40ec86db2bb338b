#pragma once

// Minimal RFC 4180 reader/writer used by the CSV corpus bundle and the
// report exporters. Quoted fields may contain commas, quotes ("") and newlines.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scai::csv {

// Reads one record. Returns nullopt at end of input. Throws std::runtime_error
// on an unterminated quoted field.
std::optional<std::vector<std::string>> read_record(std::istream& in);

std::string escape(std::string_view field);

void write_record(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace scai::csv
