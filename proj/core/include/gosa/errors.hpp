#pragma once

#include <stdexcept>
#include <string>

namespace gosa {

/// Bad argument values (counts, fractions, levels out of range).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mismatched matrix/vector dimensions.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point lies outside the problem box.
class OutOfDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Data degenerate for the requested statistic: empty sublevel set,
/// zero output variance, zero pairwise scale, and the like.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No feasible point available where one is required.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values or an internal numeric method failure.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gosa
