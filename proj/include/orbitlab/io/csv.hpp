#pragma once

// Deterministic CSV: header row, comma separated, LF line endings, reals
// with 12 significant digits, integers exact.

#include "orbitlab/integer.hpp"

#include <cmath>
#include <cstdio>
#include <type_traits>
#include <string>
#include <string_view>
#include <vector>

namespace orbitlab::io {

inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0"; // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    class Row {
    public:
        Row& operator<<(double v) { return push(format_real(v)); }
        Row& operator<<(const Integer& v) { return push(v.get_str()); }
        Row& operator<<(const Rational& v) { return push(format_rational(v)); }
        Row& operator<<(std::string_view s) { return push(quote(s)); }
        Row& operator<<(const char* s) { return push(quote(s)); }
        Row& operator<<(const std::string& s) { return push(quote(s)); }
        template <typename T>
            requires std::is_integral_v<T>
        Row& operator<<(T v) {
            return push(std::to_string(v));
        }

    private:
        friend class CsvTable;
        explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
        Row& push(std::string s) {
            cells_.push_back(std::move(s));
            return *this;
        }
        static std::string quote(std::string_view s) {
            if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
            std::string q = "\"";
            for (char c : s) {
                if (c == '"') q += '"';
                q += c;
            }
            return q + "\"";
        }
        std::vector<std::string>& cells_;
    };

    Row row() {
        rows_.emplace_back();
        return Row(rows_.back());
    }

    std::size_t size() const { return rows_.size(); }

    std::string str() const {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_) append_line(out, r);
        return out;
    }

private:
    static void append_line(std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace orbitlab::io
