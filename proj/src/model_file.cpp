#include "ddsim/model_file.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ddsim {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
    while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
    return from;
}

std::string_view rtrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Strips a trailing comment, ignoring '#' inside double quotes.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

enum class Section { None, Model, Params, Hamiltonian };

struct PendingEntry {
    int row;
    int col;
    int line;
    int column; // column of the first expression character
};

} // namespace

ModelSpec parse_model_file(std::string_view text) {
    ModelSpec spec;
    bool have_name = false;
    bool have_dim = false;
    int dim_line = 0;
    Section section = Section::None;
    std::vector<PendingEntry> pending;
    std::vector<std::string> raw_entries;

    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }

    int line_no = 0;
    for (std::string_view line : lines) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        line = rtrim(strip_comment(line));
        const std::size_t first = first_non_space(line);
        if (first == line.size()) continue;
        const int col0 = static_cast<int>(first) + 1;

        if (line[first] == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", line_no, col0);
            const std::string_view name = line.substr(first + 1, line.size() - first - 2);
            if (name == "model") section = Section::Model;
            else if (name == "params") section = Section::Params;
            else if (name == "hamiltonian") section = Section::Hamiltonian;
            else throw ParseError("unknown section '" + std::string(name) + "'", line_no, col0);
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, col0);
        const std::string key(rtrim(line.substr(first, eq - first)));
        const std::size_t vstart = first_non_space(line, eq + 1);
        const std::string_view value = line.substr(vstart);
        const int vcol = static_cast<int>(vstart) + 1;
        if (key.empty()) throw ParseError("missing key", line_no, col0);
        if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no, vcol);

        switch (section) {
        case Section::None: throw ParseError("key outside of any section", line_no, col0);
        case Section::Model:
            if (key == "name") {
                if (!is_identifier(value)) throw ParseError("invalid model name", line_no, vcol);
                spec.name = std::string(value);
                have_name = true;
            } else if (key == "dim") {
                int d = 0;
                const auto res = std::from_chars(value.data(), value.data() + value.size(), d);
                if (res.ec != std::errc() || res.ptr != value.data() + value.size())
                    throw ParseError("dim must be an integer", line_no, vcol);
                if (d < 1 || d > 9) throw ParseError("dim must be between 1 and 9", line_no, vcol);
                spec.dim = d;
                have_dim = true;
                dim_line = line_no;
            } else {
                throw ParseError("unknown key '" + key + "' in [model]", line_no, col0);
            }
            break;
        case Section::Params: {
            if (!is_identifier(key) || key.find('-') != std::string::npos)
                throw ParseError("invalid parameter name '" + key + "'", line_no, col0);
            if (is_reserved_name(key)) throw ParseError("'" + key + "' is a reserved name", line_no, col0);
            double v = 0.0;
            const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
            if (res.ec != std::errc() || res.ptr != value.data() + value.size())
                throw ParseError("parameter value must be a number", line_no, vcol);
            if (!spec.params.emplace(key, v).second)
                throw ParseError("duplicate parameter '" + key + "'", line_no, col0);
            break;
        }
        case Section::Hamiltonian: {
            if (key.size() != 3 || key[0] != 'H' || !std::isdigit(static_cast<unsigned char>(key[1])) ||
                !std::isdigit(static_cast<unsigned char>(key[2])))
                throw ParseError("unknown key '" + key + "' in [hamiltonian]; expected H<row><col>", line_no,
                                 col0);
            const int r = key[1] - '0';
            const int c = key[2] - '0';
            if (r < 1 || c < 1) throw ParseError("entry indices start at 1", line_no, col0);
            if (value.size() < 2 || value.front() != '"' || value.back() != '"')
                throw ParseError("entry expression must be double-quoted", line_no, vcol);
            for (const auto& p : pending)
                if (p.row == r - 1 && p.col == c - 1)
                    throw ParseError("duplicate entry '" + key + "'", line_no, col0);
            pending.push_back({r - 1, c - 1, line_no, vcol + 1});
            raw_entries.emplace_back(value.substr(1, value.size() - 2));
            break;
        }
        }
    }

    if (!have_name) throw ParseError("missing 'name' in [model]", line_no, 1);
    if (!have_dim) throw ParseError("missing 'dim' in [model]", line_no, 1);
    const int q = spec.dim;
    if (static_cast<int>(pending.size()) != q * q)
        throw ParseError("dim = " + std::to_string(q) + " requires " + std::to_string(q * q) +
                             " Hamiltonian entries, found " + std::to_string(pending.size()),
                         dim_line, 1);

    spec.entries.assign(q * q, std::string());
    for (std::size_t j = 0; j < pending.size(); ++j) {
        const auto& p = pending[j];
        if (p.row >= q || p.col >= q)
            throw ParseError("entry H" + std::to_string(p.row + 1) + std::to_string(p.col + 1) +
                                 " outside a " + std::to_string(q) + "x" + std::to_string(q) + " matrix",
                             p.line, p.column - 1);
        try {
            for (const auto& name : referenced_parameters(raw_entries[j]))
                if (!spec.params.contains(name))
                    throw ParseError("undefined parameter '" + name + "'", p.line, p.column);
        } catch (const ExpressionError& e) {
            throw ParseError(e.bare_message(), p.line, p.column + static_cast<int>(e.offset()));
        }
        spec.entries[p.row * q + p.col] = raw_entries[j];
    }
    return spec;
}

ModelSpec read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_file(buf.str());
}

std::string to_model_file(const ModelSpec& spec) {
    std::ostringstream out;
    out << "[model]\nname = " << spec.name << "\ndim = " << spec.dim << "\n";
    if (!spec.params.empty()) {
        out << "\n[params]\n";
        for (const auto& [k, v] : spec.params) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << k << " = " << buf << "\n";
        }
    }
    out << "\n[hamiltonian]\n";
    for (int r = 0; r < spec.dim; ++r)
        for (int c = 0; c < spec.dim; ++c)
            out << "H" << r + 1 << c + 1 << " = \"" << spec.entry(r, c) << "\"\n";
    return out.str();
}

} // namespace ddsim
