#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgc {

// Base class for every error raised by the library. The CLI maps these to
// exit status 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidLetter : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class IllegalMove : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class EncodingError : public Error {
public:
    using Error::Error;
};

class DecryptionFailure : public Error {
public:
    DecryptionFailure(const std::string& what, std::size_t unit)
        : Error(what), unit_(unit) {}

    std::size_t unit() const noexcept { return unit_; }

private:
    std::size_t unit_;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace fgc
