#pragma once

#include <stdexcept>
#include <string>

namespace starlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two truncated series (or matrices of them) carry different orders.
class OrderMismatch : public Error {
public:
    using Error::Error;
};

// Polynomials / operators living on different charts or dimensions.
class ChartMismatch : public Error {
public:
    using Error::Error;
};

// Literal or config text that cannot be parsed. `position` is a 0-based
// character offset for literals, a 1-based line number for config files.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position)
    {
    }
    // "file:line: what" for config files.
    ParseError(const std::string &what, std::size_t line, const std::string &file)
        : Error(file + ":" + std::to_string(line) + ": " + what), position_(line)
    {
    }
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Input that parses but violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

} // namespace starlab
