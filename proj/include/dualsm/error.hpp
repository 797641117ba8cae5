#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualsm {

enum class ErrorKind {
    Syntax,            // malformed program text
    Unsupported,       // well-formed text outside the supported fragment
    DomainTooLarge,    // grounding cap exceeded
    AlphabetTooLarge,  // model enumeration cap exceeded
    Overflow,          // 64-bit integer arithmetic overflow
    Shape,             // formula does not have the required syntactic form
    Invariant,         // internal consistency check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::Syntax,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace dualsm
