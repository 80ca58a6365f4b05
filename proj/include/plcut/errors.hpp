#pragma once

#include <stdexcept>
#include <string>

namespace plcut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed something that violates a documented precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A numeric routine was asked to evaluate outside its domain (e.g. log of a nonpositive factor).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Line (and column, when meaningful) are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        std::string out = what;
        if (line != 0) {
            out += " (line " + std::to_string(line);
            if (column != 0) out += ", column " + std::to_string(column);
            out += ")";
        }
        return out;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A cluster whose normalizer vanishes (e.g. zero degree under normalized cut).
class DegenerateCluster : public Error {
public:
    using Error::Error;
};

} // namespace plcut
