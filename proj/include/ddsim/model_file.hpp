#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddsim/expression.hpp"

namespace ddsim {

/// Symbolic description of a Bloch Hamiltonian as read from a model file.
struct ModelSpec {
    std::string name;
    int dim = 1;
    ParamMap params;
    std::vector<std::string> entries; // row-major, dim * dim

    const std::string& entry(int row, int col) const { return entries.at(row * dim + col); }
};

/// Parses the line-oriented model format:
///
///   # comment
///   [model]
///   name = gdse2band
///   dim = 2
///   [params]
///   t = 0.4
///   [hamiltonian]
///   H11 = "cos(kx) + t"
///
/// Throws ParseError with 1-based line/column on any problem.
ModelSpec parse_model_file(std::string_view text);

ModelSpec read_model_file(const std::string& path);

/// Serializes back into the model format (round-trips through parse_model_file).
std::string to_model_file(const ModelSpec& spec);

} // namespace ddsim
