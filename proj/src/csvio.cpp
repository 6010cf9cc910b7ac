#include "ewalk/csvio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ewalk {

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::runtime_error("row width does not match table schema");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
    char buf[64];
    if (std::holds_alternative<long>(c)) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, std::get<long>(c));
        (void)ec;
        return std::string(buf, p);
    }
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (std::isnan(v)) return "nan";
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        return std::string(buf, p);
    }
    return std::get<std::string>(c);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const ResultTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

void write_csv(const ResultTable& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    const std::string s = to_csv(t);
    f.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

std::string file_digest(const std::string& path) {
    const std::string data = read_file(path);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

}  // namespace ewalk
