#pragma once

#include <string>

#include <json.hpp>

namespace xicor {

inline constexpr const char* kVersion = "0.1.0";

// Machine-readable output row. Insertion order is the stable field order for
// both the JSON and the CSV rendering; numbers round-trip losslessly
// (shortest-representation formatting).
using Record = nlohmann::ordered_json;

std::string format_number(double v);
std::string record_to_json_line(const Record& record);
std::string csv_header(const Record& record);
std::string csv_row(const Record& record);

} // namespace xicor
