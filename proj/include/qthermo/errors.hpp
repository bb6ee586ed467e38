// errors.hpp: exception hierarchy shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    // Short machine-readable category ("validation", "numeric", ...).
    virtual const char* code() const noexcept = 0;
};

// An input violated a documented invariant (shape, Hermiticity, trace, ...).
class ValidationError : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "validation"; }
};

class NumericError : public Error {
public:
    using Error::Error;
    const char* code() const noexcept override { return "numeric"; }
};

// log of an operator whose support does not cover the requested state.
class SupportError : public NumericError {
public:
    using NumericError::NumericError;
    const char* code() const noexcept override { return "support"; }
};

// Integrator drift beyond tolerance; the message suggests a finer grid.
class StepSizeError : public NumericError {
public:
    using NumericError::NumericError;
    const char* code() const noexcept override { return "step_size"; }
};

} // namespace qthermo
