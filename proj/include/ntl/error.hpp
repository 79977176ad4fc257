#ifndef NTL_ERROR_HPP
#define NTL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ntl {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (grids, CSV series, JSON documents).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), m_line(line) {}

    /// 1-based line number of the offending input, 0 when not line-oriented.
    std::size_t line() const noexcept { return m_line; }

private:
    std::size_t m_line;
};

/// A numerical or geometric rule was violated: degenerate fit, dimension
/// mismatch, log-domain violation, out-of-bounds coordinate.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters or configuration (policies, window radius, config keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ntl

#endif
