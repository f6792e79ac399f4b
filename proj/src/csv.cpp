#include "heterour/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace heterour {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<double> parse_double(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) {
        throw ParseError("'" + path + "' contains no data rows");
    }

    // Header detection: the first row names a 'value' column. Anything else
    // is treated as data (single value, or label,value pairs).
    std::size_t value_col = 0;
    std::optional<std::size_t> date_col;
    std::size_t first_row = 0;
    bool has_header = false;
    for (std::size_t i = 0; i < rows.front().size(); ++i) {
        const std::string name = lower(trim(rows.front()[i]));
        if (name == "value") {
            value_col = i;
            has_header = true;
        } else if (name == "date") {
            date_col = i;
        }
    }
    if (has_header) {
        first_row = 1;
    } else {
        date_col.reset();
    }

    std::vector<double> values;
    std::vector<std::string> labels;
    for (std::size_t r = first_row; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        std::size_t vcol = value_col;
        std::optional<std::size_t> lcol = date_col;
        if (!has_header) {
            if (fields.size() == 1) {
                vcol = 0;
                lcol = std::nullopt;
            } else if (fields.size() == 2) {
                lcol = 0;
                vcol = 1;
            } else {
                throw ParseError("row " + std::to_string(r + 1) + " of '" + path +
                                 "': headerless rows must have 1 or 2 fields");
            }
        }
        if (vcol >= fields.size()) {
            throw ParseError("row " + std::to_string(r + 1) + " of '" + path +
                             "': missing value field");
        }
        const auto v = parse_double(fields[vcol]);
        if (!v) {
            throw ParseError("row " + std::to_string(r + 1) + " of '" + path +
                             "': cannot parse '" + fields[vcol] + "' as a number");
        }
        values.push_back(*v);
        if (lcol && *lcol < fields.size()) {
            labels.push_back(trim(fields[*lcol]));
        }
    }
    if (!labels.empty() && labels.size() != values.size()) {
        labels.clear();
    }

    try {
        return labels.empty() ? TimeSeries(std::move(values))
                              : TimeSeries(std::move(values), std::move(labels));
    } catch (const Error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, std::span<const double> values) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << "t,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i + 1) << ',' << format_double(values[i]) << '\n';
    }
}

void write_sigma_csv(const std::string& path, std::span<const double> sigma,
                     std::size_t first_t) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << "t,sigma_hat\n";
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        out << (first_t + i) << ',' << format_double(sigma[i]) << '\n';
    }
}

}  // namespace heterour
