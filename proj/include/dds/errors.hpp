#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by every module.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dds {

/// Raised when a builder would exceed its configured node budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised on malformed textual input; carries a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace dds
