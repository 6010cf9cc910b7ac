#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ewalk {

using Cell = std::variant<long, double, std::string>;

// Rectangular result table with a fixed column schema.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Byte-stable formatting: integers as decimal, doubles via the
// shortest round-trip representation (std::to_chars), so identical
// values always produce identical bytes.
std::string format_cell(const Cell& c);

// RFC-4180-style CSV: header row, comma separator, LF line endings,
// fields quoted only when needed.
std::string to_csv(const ResultTable& t);
void write_csv(const ResultTable& t, const std::string& path);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace ewalk
