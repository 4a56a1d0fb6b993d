#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace foldbend {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: violated preconditions, malformed files, out-of-range arguments.
/// The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numeric failure on otherwise valid input. The CLI maps these to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ValidationError : public InputError {
public:
    ValidationError(std::string what, std::vector<std::string> fields = {})
        : InputError(std::move(what)), fields_(std::move(fields)) {}

    /// Names of the offending fields, when known.
    const std::vector<std::string>& fields() const noexcept { return fields_; }

private:
    std::vector<std::string> fields_;
};

class InsufficientDataError : public InputError {
public:
    using InputError::InputError;
};

/// Problem too large for exhaustive search.
class SizeError : public InputError {
public:
    using InputError::InputError;
};

class ConditioningError : public NumericError {
public:
    ConditioningError(std::string what, double condition_number)
        : NumericError(std::move(what)), condition_number_(condition_number) {}

    double condition_number() const noexcept { return condition_number_; }

private:
    double condition_number_;
};

/// Equilibrium root is not bracketed in [1, lambda_max].
class SaturationError : public NumericError {
public:
    SaturationError(std::string what, double pressure_kpa, double gradient_at_lambda_max)
        : NumericError(std::move(what)),
          pressure_kpa_(pressure_kpa),
          gradient_at_lambda_max_(gradient_at_lambda_max) {}

    double pressure_kpa() const noexcept { return pressure_kpa_; }
    /// Residual strain-minus-air gradient at lambda_max (negative when saturated).
    double gradient_at_lambda_max() const noexcept { return gradient_at_lambda_max_; }

private:
    double pressure_kpa_;
    double gradient_at_lambda_max_;
};

class SolverError : public NumericError {
public:
    using NumericError::NumericError;
};

class CalibrationError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace foldbend
