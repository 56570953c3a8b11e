#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpoisson {

/// Bad argument: mismatched contexts, wrong arity, malformed data.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was applied to a multivector of unsupported degree.
class degree_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class division_by_zero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation hit a zero denominator.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class parse_error : public input_error {
public:
    /// `position` is a 0-based offset; the message prints it 1-based.
    parse_error(const std::string& what, std::size_t position)
        : input_error(what + " at position " + std::to_string(position + 1)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Strict-mode hypothesis failure; the message lists every failed condition.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The construction degenerates (zero multiplier).
class degenerate_construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rescaling requested outside the range where it is defined.
class inapplicable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gpoisson
