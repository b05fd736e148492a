#pragma once

#include <stdexcept>
#include <string>

namespace umf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or mismatched field / lattice parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Parameters that are well formed but outside what the library supports
/// (for example a period N that is not a power of q).
class UnsupportedParameter : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Integer argument outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A request that falls outside a grid window, or needs a finer resolution
/// than the grid provides. Never silently truncated.
class WindowError : public Error {
public:
    using Error::Error;
};

/// A setup or generator violating a structural assumption.
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// Malformed external input (JSON schema violations and the like).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace umf
