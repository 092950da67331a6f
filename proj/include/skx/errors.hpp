#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skx {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad hex, bad transcript file, garbled wire frame.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally sound input that violates a domain invariant (odd modulus,
// out-of-range symbol, length mismatch, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Session or wire misuse: out-of-order protocol steps, rejected
// negotiation, failed key confirmation.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// The eavesdropper cannot invert a component (only possible when the
// modulus has odd factors).
class AttackInfeasibleError : public Error {
public:
    AttackInfeasibleError(const std::string& what, std::size_t component)
        : Error(what), component_(component) {}

    std::size_t component() const { return component_; }

private:
    std::size_t component_;
};

}  // namespace skx
