#include "xicor/records.hpp"

namespace xicor {

std::string format_number(double v) {
    return nlohmann::json(v).dump();
}

std::string record_to_json_line(const Record& record) {
    return record.dump();
}

namespace {

std::string cell(const Record& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

} // namespace

std::string csv_header(const Record& record) {
    std::string out;
    for (auto it = record.begin(); it != record.end(); ++it) {
        if (!out.empty()) out += ',';
        out += it.key();
    }
    return out;
}

std::string csv_row(const Record& record) {
    std::string out;
    for (auto it = record.begin(); it != record.end(); ++it) {
        if (!out.empty()) out += ',';
        out += cell(it.value());
    }
    return out;
}

} // namespace xicor
