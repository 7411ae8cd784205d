#include "ddsim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "ddsim/error.hpp"

namespace ddsim {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // fold -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_row(std::initializer_list<Cell> cells) {
    std::string out;
    bool first = true;
    for (const Cell& c : cells) {
        if (!first) out += ',';
        out += c.text;
        first = false;
    }
    out += '\n';
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw InputError("write failed: " + path.string());
}

} // namespace ddsim
