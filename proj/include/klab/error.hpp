#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace klab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input. Maps to CLI exit status 2.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// An operation was called outside its documented domain.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

// A configured search bound (exponent cap, permutation cap, size cap) was hit.
// Maps to CLI exit status 3.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace klab
