#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vivid {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input that violates the documented grammar (bad JSON/CSV syntax, wrong
// types, missing required keys). Maps to CLI exit code 2.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t byte_offset = 0,
                        std::size_t line = 0)
        : Error(what), byte_offset_(byte_offset), line_(line) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t byte_offset_;
    std::size_t line_;
};

// Well-formed input that breaks an invariant (duplicate ids, out-of-range
// severity, inconsistent report). Maps to CLI exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Computation aborted by a resource guard (e.g. the maximal-clique cap).
// Maps to CLI exit code 3.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace vivid
