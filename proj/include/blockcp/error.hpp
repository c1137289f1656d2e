#pragma once

#include <stdexcept>
#include <string>

namespace blockcp {

/// Malformed or unreadable input data (files, records, matrix entries).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense input whose mirrored entries differ beyond the configured tolerance.
class SymmetryViolation : public InputError {
public:
    SymmetryViolation(std::size_t row, std::size_t col, double a, double b)
        : InputError("matrix is not symmetric at (" + std::to_string(row + 1) + ", " +
                     std::to_string(col + 1) + "): " + std::to_string(a) +
                     " vs " + std::to_string(b)),
          row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Parameters that are individually valid but cannot be satisfied together
/// (split out of range, too many cuts for the matrix order, ...).
class InfeasibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace blockcp
