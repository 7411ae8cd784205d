#pragma once

#include <stdexcept>
#include <string>

namespace ddsim {

// Bad user input: malformed model files, out-of-range parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& message, int line, int column)
        : InputError(format(message, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
};

// The numerics could not produce a trustworthy answer (eigensolver failure,
// inconsistent winding numbers, norm underflow, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ddsim
