#include "xicor/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace xicor {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    if (delim == ' ') {
        std::istringstream iss(line);
        std::string token;
        while (iss >> token) fields.push_back(token);
        return fields;
    }
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, delim)) fields.push_back(trim(field));
    if (!line.empty() && line.back() == delim) fields.emplace_back();
    return fields;
}

double parse_value(const std::string& field, long lineno) {
    const std::string token = trim(field);
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw parse_error("not a number: '" + token + "'", lineno);
    if (!std::isfinite(value))
        throw parse_error("non-finite value '" + token + "' rejected", lineno);
    return value;
}

} // namespace

PairedSample load_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty input: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    char delim = ' ';
    if (line.find(',') != std::string::npos) delim = ',';
    else if (line.find('\t') != std::string::npos) delim = '\t';
    else if (line.find(';') != std::string::npos) delim = ';';

    const auto header = split(line, delim);
    long x_col = -1, y_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lowercase(trim(header[i]));
        if (name == "x") x_col = static_cast<long>(i);
        if (name == "y") y_col = static_cast<long>(i);
    }
    if (x_col < 0) throw parse_error("header has no 'x' column", 1);
    if (y_col < 0) throw parse_error("header has no 'y' column", 1);

    PairedSample sample;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split(line, delim);
        if (fields.size() != header.size())
            throw parse_error("expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              lineno);
        sample.xs.push_back(parse_value(fields[static_cast<std::size_t>(x_col)], lineno));
        sample.ys.push_back(parse_value(fields[static_cast<std::size_t>(y_col)], lineno));
    }
    if (sample.xs.empty()) throw parse_error("no data rows after the header");
    return sample;
}

PairedSample load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    return load_dataset(in);
}

} // namespace xicor
