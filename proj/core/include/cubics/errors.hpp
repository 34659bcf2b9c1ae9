#pragma once

#include <stdexcept>
#include <string>

namespace cubics {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedField : Error {
    using Error::Error;
};
struct ReducibleModulus : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct IncompatibleFields : Error {
    using Error::Error;
};
struct ContextMismatch : Error {
    using Error::Error;
};
struct ZeroForm : Error {
    using Error::Error;
};

// Raised when the two smoothness oracles disagree on a form. The message
// carries the coefficient vector; callers are expected to log it, not to
// treat it as a plain crash.
struct OracleDisagreement : Error {
    explicit OracleDisagreement(const std::string& coeffs)
        : Error("smoothness oracles disagree on form " + coeffs), coefficients(coeffs) {}
    std::string coefficients;
};

// A smooth surface whose point count does not have the shape q^2+(t+1)q+1.
struct NonIntegralTrace : Error {
    using Error::Error;
};

struct UnsupportedCharacteristic : Error {
    using Error::Error;
};
struct ConfigMismatch : Error {
    using Error::Error;
};
struct ResumeMismatch : Error {
    using Error::Error;
};
struct LedgerInconsistency : Error {
    using Error::Error;
};
struct NonPolynomialResult : Error {
    using Error::Error;
};

} // namespace cubics
