#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

namespace ddsim {

/// 17 significant digits, fixed exponent form ("%.16e"): byte-stable output.
std::string format_double(double v);

struct Cell {
    std::string text;
    Cell(double v) : text(format_double(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(long v) : text(std::to_string(v)) {}
    Cell(std::size_t v) : text(std::to_string(v)) {}
    Cell(const char* s) : text(s) {}
    Cell(std::string s) : text(std::move(s)) {}
    Cell(std::string_view s) : text(s) {}
};

/// Comma-joined cells terminated by '\n'.
std::string csv_row(std::initializer_list<Cell> cells);

/// Writes (truncating) and throws InputError if the file cannot be opened.
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace ddsim
