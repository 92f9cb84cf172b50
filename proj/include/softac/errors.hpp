#pragma once

#include <stdexcept>
#include <string>

namespace softac {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two valuations from different valuation structures were combined or compared.
class StructureMismatchError : public Error {
public:
    using Error::Error;
};

/// difference(b, a) was requested with a > b.
class OrderError : public Error {
public:
    using Error::Error;
};

/// A maximal difference was requested in a structure where none exists.
class UnfairStructureError : public Error {
public:
    using Error::Error;
};

/// Malformed input: unknown variable, value outside its domain, bad scope, ...
class InputError : public Error {
public:
    using Error::Error;
};

/// Operation not applicable to this structure or problem shape.
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// An enumeration cap or table-size guard was exceeded.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Arithmetic on an unbounded carrier would wrap.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An internal invariant no longer holds (corrupted delta tables, broken bound).
class CorruptionError : public Error {
public:
    using Error::Error;
};

} // namespace softac
