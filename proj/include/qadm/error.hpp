#pragma once

#include <stdexcept>
#include <string>

namespace qadm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(int line, const std::string& msg)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
    int line;
};

struct UnsupportedMeasure : Error {
    using Error::Error;
};

} // namespace qadm
