#pragma once

#include <stdexcept>
#include <string>

namespace ordkit {

enum class ErrorKind {
    Syntax,       // malformed text
    NotNormal,    // input violates a normal-form invariant
    Cap,          // size / depth / range cap exceeded
    CannotVerify, // term-level reasoning cannot decide (Mu terms, symbolic levels)
    Domain,       // precondition of an operation violated
    Check         // derivation side condition failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(size_t pos, const std::string& msg)
        : Error(ErrorKind::Syntax, "at " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    size_t pos() const { return pos_; }

private:
    size_t pos_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace ordkit
