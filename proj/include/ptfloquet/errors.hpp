#pragma once

#include <stdexcept>
#include <string>

namespace ptfloquet {

// Usage-class errors (bad input, bad parameters) derive from InputError;
// numerical breakdowns derive from NumericalError. The CLI maps the two
// families onto distinct exit codes.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrderIndexError : public InputError {
public:
    using InputError::InputError;
};

class MalformedInputError : public InputError {
public:
    using InputError::InputError;
};

class ParameterError : public InputError {
public:
    using InputError::InputError;
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

class IntegrationFailure : public NumericalError {
public:
    IntegrationFailure(const std::string& what, double last_x)
        : NumericalError(what), last_x_(last_x) {}
    double last_x() const noexcept { return last_x_; }

private:
    double last_x_;
};

class DivergenceError : public NumericalError {
public:
    DivergenceError(const std::string& what, double last_x)
        : NumericalError(what), last_x_(last_x) {}
    double last_x() const noexcept { return last_x_; }

private:
    double last_x_;
};

class EigensolverFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ContourFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace ptfloquet
