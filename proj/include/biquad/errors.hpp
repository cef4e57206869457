#pragma once

#include <stdexcept>
#include <string>

namespace biquad {

/// Shape or length of an argument does not match the operation's contract.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An index is outside the valid 0-based range.
struct IndexError : std::out_of_range {
    explicit IndexError(const std::string& msg) : std::out_of_range(msg) {}
};

/// A value violates a precondition (non-finite entry, negative component,
/// zero vector, tensor with negative entries, ...).
struct ValueError : std::invalid_argument {
    explicit ValueError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Some pair (x_i, g_i) or (y_j, h_j) vanished simultaneously, so the
/// Collatz ratios are undefined at this point.
struct DegeneratePointError : std::runtime_error {
    explicit DegeneratePointError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two independent computations that must agree did not.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// File parsing / serialization failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace biquad
