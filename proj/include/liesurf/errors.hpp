#ifndef LIESURF_ERRORS_HPP
#define LIESURF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesurf {

/// Malformed or unsupported input: bad syntax, unknown identifiers,
/// expressions outside the supported language.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure carrying a 1-based source position.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// An operation was called outside its domain (regularity, degeneracy,
/// grid sizes, degree caps).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace liesurf

#endif  // LIESURF_ERRORS_HPP
