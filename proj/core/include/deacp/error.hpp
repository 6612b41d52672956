#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deacp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string &msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A complexity measure was requested for a term whose evaluation does not
// eventually halt.
class UndefinedMeasure : public Error {
public:
    using Error::Error;
};

// Exploration hit its state bound before a verdict could be reached.
class Undecided : public Error {
public:
    using Error::Error;
};

} // namespace deacp
