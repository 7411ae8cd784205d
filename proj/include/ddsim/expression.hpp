#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "ddsim/error.hpp"
#include "ddsim/fourier.hpp"

namespace ddsim {

using ParamMap = std::map<std::string, double>;

/// Error inside a single expression; offset is the 0-based character index.
class ExpressionError : public InputError {
public:
    ExpressionError(const std::string& message, std::size_t offset)
        : InputError("column " + std::to_string(offset + 1) + ": " + message), message_(message),
          offset_(offset) {}

    const std::string& bare_message() const { return message_; }
    std::size_t offset() const { return offset_; }

private:
    std::string message_;
    std::size_t offset_;
};

// Expression language for Hamiltonian entries:
//   numbers, parameters, kx, ky, i, pi
//   + - * / ^ (integer exponent), parentheses
//   sin(.), cos(.) of integer combinations of kx, ky (plus a constant)
//   exp(.) of i times such a combination (plus a constant)
// Division is only allowed by constants.

/// Exact finite Fourier series of an entry expression. Parameters are
/// substituted numerically before lowering.
FourierSeries lower_expression(std::string_view expr, const ParamMap& params);

/// Direct numeric evaluation of the expression at momentum k.
std::complex<double> evaluate_expression(std::string_view expr, const ParamMap& params,
                                         const Eigen::Vector2d& k);

/// Parameter names referenced by the expression (reserved names excluded).
/// Throws ExpressionError on syntax errors.
std::set<std::string> referenced_parameters(std::string_view expr);

/// Names that cannot be used as parameters.
bool is_reserved_name(std::string_view name);

} // namespace ddsim
