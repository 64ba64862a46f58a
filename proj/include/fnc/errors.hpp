#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fnc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input from the caller: invalid parameters, malformed text, wrong
// preconditions. The CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Arithmetic between elements of two different field contexts.
class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field context mismatch") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in finite field") {}
};

// Multivariate long division left a nonzero remainder.
class NotDivisible : public Error {
public:
    using Error::Error;
};

// vanish_order of the zero form.
class InfiniteOrder : public Error {
public:
    InfiniteOrder() : Error("vanishing order of the zero form is infinite") {}
};

class NotOnCurve : public Error {
public:
    using Error::Error;
};

// The points of a curve/line intersection are not all rational over the
// working field. `needed_ext` is the j for which GF(q^j) splits the
// remaining factor, or 0 when it was not found.
class UnsplitFiber : public Error {
public:
    UnsplitFiber(const std::string& what, std::uint32_t needed_ext)
        : Error(what), needed_ext_(needed_ext) {}
    std::uint32_t needed_ext() const { return needed_ext_; }

private:
    std::uint32_t needed_ext_;
};

// An internal invariant failed (e.g. D1 not divisible by D2). The CLI maps
// these to exit code 2.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace fnc
