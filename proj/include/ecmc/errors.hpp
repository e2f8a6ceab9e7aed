#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecmc {

// Error classes map one-to-one onto CLI exit codes; see tools/ecmc_main.cpp
// and the README for the contract.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable / unwritable files.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed formula text or malformed JSON.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
    explicit ParseError(const std::string& msg) : Error(msg), pos_(0) {}

    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Structurally well-formed input that violates a model or formula invariant:
// unknown variable, out-of-range value, non-recursive function set, empty
// team restriction, fragment violation, and the like.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A formula expansion or team enumeration exceeded a configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace ecmc
