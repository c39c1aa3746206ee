#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace lumilink {

/// Fixed CSV number rendering: `%.12g`-style, '.' separator, locale independent.
inline std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

/// Shortest text that parses back to exactly `value`.
inline std::string format_exact(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& header(std::initializer_list<std::string_view> names) {
        bool first = true;
        for (auto name : names) {
            if (!first) out_ << ',';
            out_ << name;
            first = false;
        }
        out_ << '\n';
        return *this;
    }

    CsvWriter& field(double value) { return raw(format_number(value)); }
    CsvWriter& field(std::uint64_t value) { return raw(std::to_string(value)); }
    CsvWriter& field(std::int64_t value) { return raw(std::to_string(value)); }
    CsvWriter& field(int value) { return raw(std::to_string(value)); }
    CsvWriter& field(std::string_view text) { return raw(text); }
    CsvWriter& field(const char* text) { return raw(text); }

    void end_row() {
        out_ << '\n';
        first_ = true;
    }

private:
    CsvWriter& raw(std::string_view text) {
        if (!first_) out_ << ',';
        out_ << text;
        first_ = false;
        return *this;
    }

    std::ostream& out_;
    bool first_ = true;
};

/// Splits one CSV line on commas (no quoting; our files never need it).
inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        cells.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

}  // namespace lumilink
