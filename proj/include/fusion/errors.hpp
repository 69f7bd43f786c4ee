#pragma once

#include <stdexcept>
#include <string>

namespace fusion {

// Base for everything thrown out of this library.
struct FusionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A label does not belong to the ring it was handed to.
struct LabelError : FusionError {
    using FusionError::FusionError;
};

// Elements or multipliers from different rings were mixed.
struct RingMismatchError : FusionError {
    using FusionError::FusionError;
};

// Invalid construction parameter (index below 4, r outside (0,1], ...).
struct ParamError : FusionError {
    using FusionError::FusionError;
};

// A structural invariant failed; message carries a witness.
struct ValidationError : FusionError {
    using FusionError::FusionError;
};

// Quadrature or iteration did not reach the requested accuracy.
struct NumericError : FusionError {
    double achieved = 0.0;
    NumericError(const std::string& msg, double got)
        : FusionError(msg), achieved(got) {}
};

// Lazy multiplier evaluation failed; message names the labels involved.
struct EvaluationError : FusionError {
    using FusionError::FusionError;
};

} // namespace fusion
